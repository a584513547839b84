#include "symdet/detect.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>

#include "symdet/error.hpp"
#include "symdet/parallel.hpp"

namespace symdet {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kFoldPhases = 64;
constexpr std::array<double, 4> kFoldLatitudes{kPi / 2, 3 * kPi / 8, kPi / 4, kPi / 8};

class StageClock {
 public:
  explicit StageClock(std::map<std::string, double>& out) : out_(out), start_(std::chrono::steady_clock::now()) {}
  void lap(const std::string& stage) {
    const auto now = std::chrono::steady_clock::now();
    out_[stage] += std::chrono::duration<double, std::milli>(now - start_).count();
    start_ = now;
  }

 private:
  std::map<std::string, double>& out_;
  std::chrono::steady_clock::time_point start_;
};

struct Candidate {
  double angle = 0.0;
  Eigen::Vector3d direction = Eigen::Vector3d::UnitX();
  int order = 0;
  CandidateSource source = CandidateSource::CriticalPointOfEvenDM;
};

struct Prepared {
  Shape centered;
  MomentTensor mu;
};

Prepared prepare(const Shape& shape, const DetectConfig& cfg) {
  cfg.validate();
  Shape centered = translate(shape, -centroid(shape));
  MomentTensor mu = central_moments(centered, cfg.max_moment_order);
  return {std::move(centered), std::move(mu)};
}

// Largest normalized |I_j(a) - I_j(b)| over the isometric invariants of two halves.
double isometric_gap_2d(const MomentTensor& a, const MomentTensor& b) {
  const auto ia = hu_invariants(a), ib = hu_invariants(b);
  double gap = 0.0;
  for (int j = 0; j < 6; ++j) {
    const double s = std::max(moment_scale(a, kHuDegrees[j].mass, kHuDegrees[j].length),
                              moment_scale(b, kHuDegrees[j].mass, kHuDegrees[j].length));
    gap = std::max(gap, std::abs(ia[j] - ib[j]) / s);
  }
  return gap;
}

double isometric_gap_3d(const MomentTensor& a, const MomentTensor& b) {
  const auto ia = isometric_invariants_3d(a), ib = isometric_invariants_3d(b);
  double gap = 0.0;
  for (int j = 0; j < 3; ++j) {
    const double s = std::max(moment_scale(a, kIsometric3dDegrees[j].mass, kIsometric3dDegrees[j].length),
                              moment_scale(b, kIsometric3dDegrees[j].mass, kIsometric3dDegrees[j].length));
    gap = std::max(gap, std::abs(ia[j] - ib[j]) / s);
  }
  return gap;
}

void finish(Verification& v, const DetectConfig& cfg) {
  v.residual = std::max(cfg.moment_check ? v.moment_residual : 0.0, cfg.split_check ? v.split_residual : 0.0);
  if (v.reason.empty()) {
    v.pass = v.residual <= cfg.zero_tol;
    if (!v.pass) v.reason = "residual above tolerance";
  }
}

// `centered` must have its centroid at the origin; `mu` its central moments.
Verification verify_axis(const Shape& centered, const MomentTensor& mu, double angle, const DetectConfig& cfg,
                         double* isometric_gap) {
  Verification v;
  const LineThroughOrigin line(reduce_angle_mod_pi(angle));
  if (cfg.moment_check)
    v.moment_residual = moment_deviation(mu, transform_moments(mu, householder(Eigen::Vector2d(line.normal()))));
  if (cfg.split_check || isometric_gap) {
    try {
      const auto [left, right] = split_by_line(centered, line);
      const MomentTensor ml = central_moments(left, 3), mr = central_moments(right, 3);
      if (cfg.split_check) {
        const auto rl = reflection_invariants_2d(ml), rr = reflection_invariants_2d(mr);
        const double s = std::max(moment_scale(ml, kReflection2dDegree.mass, kReflection2dDegree.length),
                                  moment_scale(mr, kReflection2dDegree.mass, kReflection2dDegree.length));
        v.split_residual = std::max(std::abs(rl[0] + rr[0]), std::abs(rl[1] + rr[1])) / s;
      }
      if (isometric_gap) *isometric_gap = isometric_gap_2d(ml, mr);
    } catch (const DegenerateSplit&) {
      if (cfg.split_check) v.reason = "degenerate split";
      if (isometric_gap) *isometric_gap = INFINITY;
    }
  }
  finish(v, cfg);
  return v;
}

Verification verify_plane(const Shape& centered, const MomentTensor& mu, const Eigen::Vector3d& normal,
                          const DetectConfig& cfg) {
  Verification v;
  const Eigen::Vector3d n = normal.normalized();
  if (cfg.moment_check) v.moment_residual = moment_deviation(mu, transform_moments(mu, householder(n)));
  if (cfg.split_check) {
    if (const auto* points = std::get_if<PointSet3>(&centered)) {
      try {
        const auto [left, right] = split_by_plane(*points, PlaneThroughOrigin(n));
        const MomentTensor ml = central_moments(Shape{left}, 4), mr = central_moments(Shape{right}, 4);
        const auto sl = reflection_invariants_3d(ml), sr = reflection_invariants_3d(mr);
        const double s = std::max(moment_scale(ml, kReflection3dDegree.mass, kReflection3dDegree.length),
                                  moment_scale(mr, kReflection3dDegree.mass, kReflection3dDegree.length));
        v.split_residual = std::max(std::abs(sl[0] + sr[0]), std::abs(sl[1] + sr[1])) / s;
      } catch (const DegenerateSplit&) {
        v.reason = "degenerate split";
      }
    }
  }
  finish(v, cfg);
  return v;
}

std::map<int, bool> dm_constancy(const MomentTensor& mu, double tol) {
  std::map<int, bool> out;
  for (int k = 1; k <= mu.max_order(); ++k)
    out[k] = mu.dimension() == 2 ? is_constant_dm(build_dm_2d(mu, k), tol) : is_constant_dm(build_dm_3d(mu, k), tol);
  return out;
}

std::vector<Candidate> candidates_2d(const MomentTensor& mu, const DetectConfig& cfg, std::vector<int>& orders) {
  std::vector<Candidate> out;
  if (const auto odd = first_nonconstant_order(mu, 1, cfg.zero_tol)) {
    orders.push_back(*odd);
    for (double t : roots_2d(build_dm_2d(mu, *odd), cfg.zero_tol))
      out.push_back({reduce_angle_mod_pi(t + kPi / 2), {}, *odd, CandidateSource::ZeroOfOddDM});
  }
  if (const auto even = first_nonconstant_order(mu, 0, cfg.zero_tol)) {
    orders.push_back(*even);
    for (double t : critical_points_2d(build_dm_2d(mu, *even), cfg.zero_tol)) {
      out.push_back({reduce_angle_mod_pi(t), {}, *even, CandidateSource::CriticalPointOfEvenDM});
      out.push_back({reduce_angle_mod_pi(t + kPi / 2), {}, *even, CandidateSource::CriticalPointOfEvenDM});
    }
  }
  std::sort(orders.begin(), orders.end());
  // merge near-identical lines, keeping the lowest DM order
  std::sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
    return a.angle != b.angle ? a.angle < b.angle : a.order < b.order;
  });
  std::vector<Candidate> merged;
  for (const auto& c : out) {
    auto near = [&](const Candidate& m) {
      const double d = std::abs(m.angle - c.angle);
      return std::min(d, kPi - d) <= cfg.angular_tol;
    };
    auto it = std::find_if(merged.begin(), merged.end(), near);
    if (it == merged.end())
      merged.push_back(c);
    else if (c.order < it->order)
      *it = c;
  }
  for (auto& c : merged) c.direction = {std::cos(c.angle), std::sin(c.angle), 0.0};
  return merged;
}

std::vector<Candidate> candidates_3d(const MomentTensor& mu, const DetectConfig& cfg, std::vector<int>& orders) {
  std::vector<Candidate> out;
  for (int k = 2; k <= mu.max_order(); k += 2) {
    const DirectionalMoment3D dm = build_dm_3d(mu, k);
    if (is_constant_dm(dm, cfg.zero_tol)) continue;
    orders.push_back(k);
    bool degenerate = false;
    for (const auto& c : critical_points_3d(dm, cfg.zero_tol)) {
      degenerate = degenerate || c.degenerate;
      const bool known = std::any_of(out.begin(), out.end(), [&](const Candidate& o) {
        return line_angle(o.direction, c.direction) <= cfg.angular_tol;
      });
      if (!known) out.push_back({0.0, c.direction, k, c.source});
    }
    // a critical curve leaves directions on it undetermined; the next even order pins them down
    if (!degenerate) break;
  }
  return out;
}

struct Pipeline {
  SymmetryReport report;
  Prepared prepared;
  std::vector<Candidate> candidates;
};

Pipeline run_reflection(const Shape& shape, const DetectConfig& cfg, int dim) {
  if (dimension(shape) != dim) throw InputError("shape dimension does not match the detector");
  Pipeline p;
  SymmetryReport& r = p.report;
  StageClock clock(r.timings_ms);
  p.prepared = prepare(shape, cfg);
  const Shape& centered = p.prepared.centered;
  const MomentTensor& mu = p.prepared.mu;
  r.dimension = dim;
  r.shape_kind = std::string(kind_name(shape));
  r.mass = mu.mass();
  r.centroid = centroid(shape);
  clock.lap("moments");

  r.reflection_invariants = reflection_invariant_set(mu);
  r.quick_reject = cfg.quick_reject && quick_reject_symmetry(r.reflection_invariants, cfg.zero_tol);
  clock.lap("invariants");

  r.dm_constant = dm_constancy(mu, cfg.zero_tol);
  p.candidates = dim == 2 ? candidates_2d(mu, cfg, r.candidate_dm_orders) : candidates_3d(mu, cfg, r.candidate_dm_orders);
  r.candidate_count = static_cast<int>(p.candidates.size());
  clock.lap("candidates");

  const std::size_t n = p.candidates.size();
  std::vector<Verification> verdicts(n);
  std::vector<double> gaps(n, INFINITY);
  const bool want_gap = dim == 2 && cfg.detect_rotation;
  parallel_for(
      n,
      [&](std::size_t i) {
        const Candidate& c = p.candidates[i];
        if (dim == 2) {
          if (r.quick_reject) {
            // only the isometric half comparison is needed
            DetectConfig light = cfg;
            light.moment_check = light.split_check = false;
            if (want_gap) verify_axis(centered, mu, c.angle, light, &gaps[i]);
          } else {
            verdicts[i] = verify_axis(centered, mu, c.angle, cfg, want_gap ? &gaps[i] : nullptr);
          }
        } else if (!r.quick_reject) {
          verdicts[i] = verify_plane(centered, mu, c.direction, cfg);
        }
      },
      1);

  for (std::size_t i = 0; i < n; ++i) {
    if (gaps[i] <= cfg.zero_tol) r.even_rotation_hint = true;
    if (r.quick_reject || !verdicts[i].pass) continue;
    const Candidate& c = p.candidates[i];
    ReflectionElement e;
    e.angle = dim == 2 ? c.angle : 0.0;
    e.direction = dim == 2 ? c.direction : canonical_direction(c.direction);
    e.residual = verdicts[i].residual;
    e.split_residual = verdicts[i].split_residual;
    e.moment_residual = verdicts[i].moment_residual;
    e.dm_order = c.order;
    e.source = c.source;
    auto same = std::find_if(r.reflections.begin(), r.reflections.end(), [&](const ReflectionElement& o) {
      return line_angle(o.direction, e.direction) <= cfg.angular_tol;
    });
    if (same == r.reflections.end()) {
      r.reflections.push_back(e);
    } else if (e.dm_order < same->dm_order || (e.dm_order == same->dm_order && e.residual < same->residual)) {
      *same = e;
    }
  }
  std::sort(r.reflections.begin(), r.reflections.end(), [dim](const ReflectionElement& a, const ReflectionElement& b) {
    if (dim == 2) return a.angle < b.angle;
    for (int i = 0; i < 3; ++i)
      if (a.direction(i) != b.direction(i)) return a.direction(i) < b.direction(i);
    return false;
  });
  clock.lap("verification");
  return p;
}

bool fold_holds(const std::vector<DirectionalMoment2D>& dms, int n, double tol) {
  for (const auto& dm : dms) {
    for (int j = 0; j < kFoldPhases; ++j) {
      const double t0 = 2 * kPi * j / kFoldPhases;
      const double v0 = dm(t0);
      for (int i = 1; i < n; ++i)
        if (std::abs(dm(t0 + 2 * kPi * i / n) - v0) > tol * dm.scale) return false;
    }
  }
  return true;
}

bool fold_holds(const std::vector<DirectionalMoment3D>& dms, const Eigen::Vector3d& axis, const Eigen::Vector3d& u,
                const Eigen::Vector3d& v, int n, double tol) {
  for (const auto& dm : dms) {
    for (double beta : kFoldLatitudes) {
      for (int j = 0; j < kFoldPhases; ++j) {
        auto dir = [&](double psi) {
          return Eigen::Vector3d(std::cos(beta) * axis + std::sin(beta) * (std::cos(psi) * u + std::sin(psi) * v));
        };
        const double p0 = 2 * kPi * j / kFoldPhases;
        const double v0 = dm(dir(p0));
        for (int i = 1; i < n; ++i)
          if (std::abs(dm(dir(p0 + 2 * kPi * i / n)) - v0) > tol * dm.scale) return false;
      }
    }
  }
  return true;
}

}  // namespace

void DetectConfig::validate() const {
  if (max_moment_order < 2 || max_moment_order > kMaxMomentOrder)
    throw InputError("max moment order must be in [2, " + std::to_string(kMaxMomentOrder) + "]");
  if (!(zero_tol > 0) || !std::isfinite(zero_tol)) throw InputError("zero tolerance must be positive");
  if (!(angular_tol > 0) || !std::isfinite(angular_tol)) throw InputError("angular tolerance must be positive");
  if (max_fold < 2) throw InputError("max fold must be at least 2");
}

DetectConfig DetectConfig::relaxed() {
  DetectConfig cfg;
  cfg.zero_tol = 3e-2;
  cfg.angular_tol = 2e-2;
  return cfg;
}

bool operator==(const SymmetryReport& a, const SymmetryReport& b) {
  return a.dimension == b.dimension && a.shape_kind == b.shape_kind && a.mass == b.mass &&
         a.centroid.size() == b.centroid.size() && a.centroid == b.centroid &&
         a.reflection_invariants == b.reflection_invariants && a.quick_reject == b.quick_reject &&
         a.dm_constant == b.dm_constant && a.candidate_dm_orders == b.candidate_dm_orders &&
         a.candidate_count == b.candidate_count && a.reflections == b.reflections && a.rotations == b.rotations &&
         a.even_rotation_hint == b.even_rotation_hint && a.even_rotation == b.even_rotation;
}

double moment_deviation(const MomentTensor& a, const MomentTensor& b) {
  if (a.dimension() != b.dimension() || a.max_order() != b.max_order())
    throw InputError("moment_deviation: tensors differ in shape");
  double worst = 0.0;
  for (const auto& e : a.exponents())
    worst = std::max(worst, std::abs(a[e] - b[e]) / moment_scale(a, 1, e[0] + e[1] + e[2]));
  return worst;
}

std::optional<int> first_nonconstant_order(const MomentTensor& mu, int parity, double tol) {
  for (int k = parity == 0 ? 2 : 1; k <= mu.max_order(); k += 2) {
    const bool constant =
        mu.dimension() == 2 ? is_constant_dm(build_dm_2d(mu, k), tol) : is_constant_dm(build_dm_3d(mu, k), tol);
    if (!constant) return k;
  }
  return std::nullopt;
}

Verification verify_reflection_axis_2d(const Shape& shape, double axis_angle, const DetectConfig& cfg) {
  if (dimension(shape) != 2) throw InputError("verify_reflection_axis_2d needs a 2D shape");
  const Prepared p = prepare(shape, cfg);
  return verify_axis(p.centered, p.mu, axis_angle, cfg, nullptr);
}

Verification verify_reflection_plane_3d(const Shape& shape, const Eigen::Vector3d& normal, const DetectConfig& cfg) {
  if (dimension(shape) != 3) throw InputError("verify_reflection_plane_3d needs a 3D shape");
  if (!(normal.norm() > 0)) throw InputError("zero plane normal");
  const Prepared p = prepare(shape, cfg);
  return verify_plane(p.centered, p.mu, normal, cfg);
}

SymmetryReport detect_reflection_2d(const Shape& shape, const DetectConfig& cfg) {
  return run_reflection(shape, cfg, 2).report;
}

SymmetryReport detect_reflection_3d(const Shape& shape, const DetectConfig& cfg) {
  return run_reflection(shape, cfg, 3).report;
}

std::optional<int> rotation_fold_2d(const MomentTensor& mu, const DetectConfig& cfg) {
  if (mu.dimension() != 2) throw InputError("rotation_fold_2d needs a 2D tensor");
  std::vector<DirectionalMoment2D> dms;
  for (int k = 1; k <= mu.max_order(); ++k) {
    DirectionalMoment2D dm = build_dm_2d(mu, k);
    if (!is_constant_dm(dm, cfg.zero_tol)) dms.push_back(std::move(dm));
  }
  if (dms.empty()) return std::nullopt;
  for (int n = cfg.max_fold; n >= 2; --n)
    if (fold_holds(dms, n, cfg.zero_tol)) return n;
  return std::nullopt;
}

std::optional<int> rotation_fold_2d(const Shape& shape, const DetectConfig& cfg) {
  if (dimension(shape) != 2) throw InputError("rotation_fold_2d needs a 2D shape");
  return rotation_fold_2d(prepare(shape, cfg).mu, cfg);
}

std::optional<int> rotation_fold_3d(const MomentTensor& mu, const Eigen::Vector3d& axis, const DetectConfig& cfg) {
  if (mu.dimension() != 3) throw InputError("rotation_fold_3d needs a 3D tensor");
  if (!(axis.norm() > 0)) throw InputError("rotation_fold_3d: zero axis");
  const Eigen::Vector3d a = axis.normalized();
  const Eigen::Vector3d u = a.unitOrthogonal();
  const Eigen::Vector3d v = a.cross(u);
  std::vector<DirectionalMoment3D> dms;
  for (int k = 1; k <= mu.max_order(); ++k) {
    DirectionalMoment3D dm = build_dm_3d(mu, k);
    if (!is_constant_dm(dm, cfg.zero_tol)) dms.push_back(std::move(dm));
  }
  if (dms.empty()) return std::nullopt;
  for (int n = cfg.max_fold; n >= 2; --n)
    if (fold_holds(dms, a, u, v, n, cfg.zero_tol)) return n;
  return std::nullopt;
}

std::optional<int> rotation_fold_3d(const Shape& shape, const Eigen::Vector3d& axis, const DetectConfig& cfg) {
  if (dimension(shape) != 3) throw InputError("rotation_fold_3d needs a 3D shape");
  return rotation_fold_3d(prepare(shape, cfg).mu, axis, cfg);
}

SymmetryReport analyze(const Shape& shape, const DetectConfig& cfg) {
  const int dim = dimension(shape);
  Pipeline p = run_reflection(shape, cfg, dim);
  SymmetryReport& r = p.report;
  if (!cfg.detect_rotation) return r;
  StageClock clock(r.timings_ms);
  const MomentTensor& mu = p.prepared.mu;
  if (dim == 2) {
    if (const auto fold = rotation_fold_2d(mu, cfg)) {
      r.rotations.push_back({Eigen::Vector3d::UnitZ(), *fold});
      r.even_rotation = r.even_rotation_hint && *fold % 2 == 0;
    }
  } else {
    std::vector<std::optional<int>> folds(p.candidates.size());
    parallel_for(
        p.candidates.size(), [&](std::size_t i) { folds[i] = rotation_fold_3d(mu, p.candidates[i].direction, cfg); }, 1);
    std::vector<double> gaps(p.candidates.size(), INFINITY);
    const auto* points = std::get_if<PointSet3>(&p.prepared.centered);
    for (std::size_t i = 0; i < p.candidates.size(); ++i) {
      if (!folds[i]) continue;
      r.rotations.push_back({canonical_direction(p.candidates[i].direction), *folds[i]});
      if (points && *folds[i] % 2 == 0) {
        // halves on either side of a plane containing the axis swap under the half turn
        const Eigen::Vector3d u = p.candidates[i].direction.unitOrthogonal();
        try {
          const auto [left, right] = split_by_plane(*points, PlaneThroughOrigin(u));
          if (isometric_gap_3d(central_moments(Shape{left}, 2), central_moments(Shape{right}, 2)) <= cfg.zero_tol)
            r.even_rotation_hint = true;
        } catch (const DegenerateSplit&) {
        }
      } else if (!points && *folds[i] % 2 == 0) {
        r.even_rotation_hint = true;
      }
    }
    std::sort(r.rotations.begin(), r.rotations.end(), [](const RotationElement& a, const RotationElement& b) {
      for (int i = 0; i < 3; ++i)
        if (a.axis(i) != b.axis(i)) return a.axis(i) < b.axis(i);
      return false;
    });
    r.even_rotation = r.even_rotation_hint &&
                      std::any_of(r.rotations.begin(), r.rotations.end(), [](const auto& e) { return e.fold % 2 == 0; });
  }
  clock.lap("rotation");
  return r;
}

}  // namespace symdet
