#include "symdet/solve.hpp"

#include <Eigen/Geometry>
#include <Eigen/SVD>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <optional>

#include "symdet/error.hpp"
#include "symdet/parallel.hpp"

namespace symdet {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBisectionWidth = 1e-10;
constexpr double kNewtonTarget = 1e-10;
constexpr double kMergeTol = 1e-6;
constexpr double kDegenerateRatio = 1e-6;

double bisect(const TrigForm1& f, double a, double b, double fa) {
  while (b - a > kBisectionWidth) {
    const double m = 0.5 * (a + b);
    const double fm = f({m});
    if (fm == 0.0) return m;
    if ((fm < 0) == (fa < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

double golden_min_abs(const TrigForm1& f, double a, double b) {
  const double r = (std::sqrt(5.0) - 1) / 2;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = std::abs(f({c})), fd = std::abs(f({d}));
  while (b - a > kBisectionWidth) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = std::abs(f({c}));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = std::abs(f({d}));
    }
  }
  return 0.5 * (a + b);
}

// Zeros of a form with M(t + pi) = +-M(t), reported in [0, pi).
std::vector<double> zeros_mod_pi(const TrigForm1& f, double threshold) {
  const int n = kRootSamples2d;
  const double h = kPi / n;
  std::vector<double> t(n + 2), v(n + 2);
  for (int i = 0; i < n + 2; ++i) {
    t[i] = (i - 0.5) * h;
    v[i] = f({t[i]});
  }
  std::vector<double> out;
  for (int i = 0; i + 1 < n + 2; ++i) {
    if (v[i] == 0.0) {
      out.push_back(t[i]);
    } else if (v[i + 1] != 0.0 && (v[i] < 0) != (v[i + 1] < 0)) {
      out.push_back(bisect(f, t[i], t[i + 1], v[i]));
    }
  }
  for (int i = 1; i + 1 < n + 2; ++i) {
    const double a = std::abs(v[i]);
    const bool sign_change = (v[i - 1] < 0) != (v[i] < 0) || (v[i] < 0) != (v[i + 1] < 0);
    if (sign_change || a > std::abs(v[i - 1]) || a > std::abs(v[i + 1]) || a > 2 * threshold) continue;
    const double x = golden_min_abs(f, t[i - 1], t[i + 1]);
    if (std::abs(f({x})) <= threshold) out.push_back(x);
  }
  return dedup_directions(std::move(out), kMergeTol);
}

void require_nonconstant(const DirectionalMoment2D& dm, double tol) {
  if (is_constant_dm(dm, tol)) throw InputError("directional moment of order " + std::to_string(dm.order) + " is constant");
}

// Gradient and Hessian forms of one chart.
struct Chart {
  TrigForm2 p, t, pp, pt, tt;
  explicit Chart(const TrigForm2& f)
      : p(f.derivative(0)), t(f.derivative(1)), pp(p.derivative(0)), pt(p.derivative(1)), tt(t.derivative(1)) {}
};

struct Local {
  bool chart_b;
  double phi, theta;
};

Local to_local(const Eigen::Vector3d& d) {
  if (std::abs(d.z()) <= 0.8) {
    const auto [p, t] = angles_from_direction(d);
    return {false, p, t};
  }
  const auto [p, t] = chart_b_angles_from_direction(d);
  return {true, p, t};
}

Eigen::Vector3d from_local(const Local& l) {
  return l.chart_b ? direction_from_chart_b(l.phi, l.theta) : direction_from_angles(l.phi, l.theta);
}

class SphereSolver {
 public:
  explicit SphereSolver(const DirectionalMoment3D& dm) : dm_(dm), a_(dm.form), b_(dm.form_chart_b) {}

  const Chart& chart(bool b) const { return b ? b_ : a_; }

  double gradient_norm(const Local& l) const {
    const Chart& c = chart(l.chart_b);
    const double s = std::sin(l.phi);
    return std::hypot(c.p({l.phi, l.theta}), c.t({l.phi, l.theta}) / s);
  }
  double gradient_norm(const Eigen::Vector3d& d) const { return gradient_norm(to_local(d)); }

  struct Result {
    Eigen::Vector3d direction;
    double norm;
    bool degenerate;
  };

  std::optional<Result> refine(Eigen::Vector3d d, double accept) const {
    double norm = gradient_norm(d);
    for (int it = 0; it < kNewtonMaxIterations && norm > kNewtonTarget * dm_.scale; ++it) {
      const Local l = to_local(d);
      const Chart& c = chart(l.chart_b);
      const std::array<double, 2> x{l.phi, l.theta};
      const Eigen::Vector2d g(c.p(x), c.t(x));
      Eigen::Matrix2d h;
      h << c.pp(x), c.pt(x), c.pt(x), c.tt(x);
      Eigen::Vector2d step = -h.completeOrthogonalDecomposition().pseudoInverse() * g;
      if (!step.allFinite()) break;
      if (step.norm() > 0.25) step *= 0.25 / step.norm();
      bool improved = false;
      for (int half = 0; half < 30; ++half) {
        const Eigen::Vector3d trial = from_local({l.chart_b, l.phi + step(0), l.theta + step(1)});
        const double tn = gradient_norm(trial);
        if (tn < norm) {
          d = trial;
          norm = tn;
          improved = true;
          break;
        }
        step *= 0.5;
      }
      if (!improved) break;
    }
    if (!(norm <= accept)) return std::nullopt;
    return Result{canonical_direction(d), norm, is_degenerate(d)};
  }

 private:
  bool is_degenerate(const Eigen::Vector3d& d) const {
    const Local l = to_local(d);
    const Chart& c = chart(l.chart_b);
    const std::array<double, 2> x{l.phi, l.theta};
    const double s = std::sin(l.phi);
    Eigen::Matrix2d h;
    h << c.pp(x), c.pt(x) / s, c.pt(x) / s, c.tt(x) / (s * s);
    const Eigen::Vector2d sv = h.jacobiSvd().singularValues();
    return sv(1) <= kDegenerateRatio * std::max(sv(0), dm_.scale);
  }

  const DirectionalMoment3D& dm_;
  Chart a_, b_;
};

bool lex_less(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  for (int i = 0; i < 3; ++i)
    if (a(i) != b(i)) return a(i) < b(i);
  return false;
}

}  // namespace

std::string_view source_name(CandidateSource source) {
  return source == CandidateSource::ZeroOfOddDM ? "zero-of-odd-dm" : "critical-point-of-even-dm";
}

double line_angle(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  const double c = std::abs(a.normalized().dot(b.normalized()));
  const double s = a.normalized().cross(b.normalized()).norm();
  return std::atan2(s, c);
}

std::vector<double> roots_2d(const DirectionalMoment2D& dm, double tol) {
  require_nonconstant(dm, tol);
  return zeros_mod_pi(dm.form, tol * dm.scale);
}

std::vector<double> critical_points_2d(const DirectionalMoment2D& dm, double tol) {
  require_nonconstant(dm, tol);
  return zeros_mod_pi(dm.form.derivative(0), tol * dm.scale);
}

std::vector<DirectionCandidate> critical_points_3d(const DirectionalMoment3D& dm, double tol,
                                                   CriticalPointStats* stats) {
  if (is_constant_dm(dm, tol))
    throw InputError("directional moment of order " + std::to_string(dm.order) + " is constant");
  const SphereSolver solver(dm);

  const int np = kSeedGridPhi, nt = kSeedGridTheta;
  Eigen::MatrixXd norms(np, nt);
  for (int i = 0; i < np; ++i)
    for (int j = 0; j < nt; ++j)
      norms(i, j) = solver.gradient_norm(Local{false, kPi * (i + 0.5) / np, 2 * kPi * j / nt});

  std::vector<Eigen::Vector3d> seeds;
  for (int i = 0; i < np; ++i) {
    for (int j = 0; j < nt; ++j) {
      const double v = norms(i, j);
      bool minimum = true;
      for (int di = -1; di <= 1 && minimum; ++di) {
        const int ii = i + di;
        if (ii < 0 || ii >= np) continue;
        for (int dj = -1; dj <= 1; ++dj) {
          if ((di || dj) && norms(ii, (j + dj + nt) % nt) < v) {
            minimum = false;
            break;
          }
        }
      }
      if (minimum) seeds.push_back(direction_from_angles(kPi * (i + 0.5) / np, 2 * kPi * j / nt));
    }
  }

  std::vector<std::optional<SphereSolver::Result>> refined(seeds.size());
  const double accept = tol * dm.scale;
  parallel_for(seeds.size(), [&](std::size_t s) { refined[s] = solver.refine(seeds[s], accept); });

  std::vector<DirectionCandidate> found;
  int dropped = 0;
  for (const auto& r : refined) {
    if (!r) {
      ++dropped;
      continue;
    }
    DirectionCandidate c;
    c.dimension = 3;
    c.direction = r->direction;
    c.source = CandidateSource::CriticalPointOfEvenDM;
    c.dm_order = dm.order;
    c.residual = r->norm / dm.scale;
    c.degenerate = r->degenerate;
    found.push_back(c);
  }
  if (stats) *stats = {static_cast<int>(seeds.size()), dropped};

  std::sort(found.begin(), found.end(),
            [](const DirectionCandidate& a, const DirectionCandidate& b) { return lex_less(a.direction, b.direction); });
  std::vector<DirectionCandidate> out;
  for (const auto& c : found) {
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const DirectionCandidate& o) { return line_angle(o.direction, c.direction) < kMergeTol; });
    if (it == out.end()) {
      out.push_back(c);
    } else {
      if (c.residual < it->residual) {
        it->direction = c.direction;
        it->residual = c.residual;
      }
      it->degenerate = it->degenerate || c.degenerate;
    }
  }
  std::sort(out.begin(), out.end(),
            [](const DirectionCandidate& a, const DirectionCandidate& b) { return lex_less(a.direction, b.direction); });
  return out;
}

std::vector<double> dedup_directions(std::vector<double> angles, double angular_tol) {
  for (double& a : angles) a = reduce_angle_mod_pi(a);
  std::sort(angles.begin(), angles.end());
  std::vector<double> out;
  for (double a : angles)
    if (out.empty() || a - out.back() > angular_tol) out.push_back(a);
  if (out.size() > 1 && out.front() + kPi - out.back() <= angular_tol) out.pop_back();
  return out;
}

std::vector<Eigen::Vector3d> dedup_directions(const std::vector<Eigen::Vector3d>& directions, double angular_tol) {
  std::vector<Eigen::Vector3d> sorted;
  for (const auto& d : directions) sorted.push_back(canonical_direction(d.normalized()));
  std::sort(sorted.begin(), sorted.end(), lex_less);
  std::vector<Eigen::Vector3d> out;
  for (const auto& d : sorted) {
    const bool dup =
        std::any_of(out.begin(), out.end(), [&](const Eigen::Vector3d& o) { return line_angle(o, d) <= angular_tol; });
    if (!dup) out.push_back(d);
  }
  return out;
}

}  // namespace symdet
