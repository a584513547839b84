#include "symdet/moments.hpp"

#include <Eigen/Geometry>

#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>

namespace symdet {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr int kFactorialTableSize = 2 * kMaxMomentOrder + 4;

const std::array<double, kFactorialTableSize>& factorials() {
  static const auto table = [] {
    std::array<double, kFactorialTableSize> f{};
    f[0] = 1.0;
    for (int i = 1; i < kFactorialTableSize; ++i) f[i] = f[i - 1] * i;
    return f;
  }();
  return table;
}

void check_order(int max_order) {
  if (max_order < 0 || max_order > kMaxMomentOrder)
    throw InputError("moment order must be in [0, " + std::to_string(kMaxMomentOrder) + "]");
}

/// powers(i) = x^i for i = 0..order
Eigen::VectorXd powers(double x, int order) {
  Eigen::VectorXd p(order + 1);
  p(0) = 1.0;
  for (int i = 1; i <= order; ++i) p(i) = p(i - 1) * x;
  return p;
}

template <int Dim>
void accumulate_points(const Eigen::Matrix<double, Dim, Eigen::Dynamic>& pts, const Eigen::VectorXd& w,
                       MomentTensor& out) {
  const int order = out.max_order();
  const auto exps = out.exponents();
  for (Eigen::Index i = 0; i < pts.cols(); ++i) {
    if (w(i) == 0.0) continue;
    std::array<Eigen::VectorXd, 3> pw;
    for (int c = 0; c < Dim; ++c) pw[c] = powers(pts(c, i), order);
    for (const auto& e : exps) {
      double v = w(i);
      for (int c = 0; c < Dim; ++c) v *= pw[c](e[c]);
      out[e] += v;
    }
  }
}

}  // namespace

MomentTensor::MomentTensor(int dimension, int max_order, MomentFrame about)
    : dimension_(dimension), max_order_(max_order), about_(about) {
  if (dimension != 2 && dimension != 3) throw InputError("moment tensor dimension must be 2 or 3");
  check_order(max_order);
  const std::size_t side = static_cast<std::size_t>(max_order + 1);
  values_.assign(dimension == 2 ? side * side : side * side * side, 0.0);
}

std::size_t MomentTensor::index(int m, int n, int k) const {
  if (m < 0 || n < 0 || k < 0 || m + n + k > max_order_ || (dimension_ == 2 && k != 0))
    throw std::out_of_range("moment index (" + std::to_string(m) + "," + std::to_string(n) + "," +
                            std::to_string(k) + ") outside tensor of order " + std::to_string(max_order_));
  const std::size_t side = static_cast<std::size_t>(max_order_ + 1);
  return (static_cast<std::size_t>(k) * side + static_cast<std::size_t>(n)) * side + static_cast<std::size_t>(m);
}

std::vector<Exponents> exponents_of_order(int dimension, int order) {
  std::vector<Exponents> out;
  if (dimension == 2) {
    for (int n = 0; n <= order; ++n) out.push_back({order - n, n, 0});
  } else {
    for (int m = order; m >= 0; --m)
      for (int n = order - m; n >= 0; --n) out.push_back({m, n, order - m - n});
  }
  return out;
}

std::vector<Exponents> MomentTensor::exponents() const {
  std::vector<Exponents> out;
  for (int o = 0; o <= max_order_; ++o) {
    const auto e = exponents_of_order(dimension_, o);
    out.insert(out.end(), e.begin(), e.end());
  }
  return out;
}

double triangle_monomial_integral(const Eigen::Vector2d& a, const Eigen::Vector2d& b, int m, int n) {
  const auto& f = factorials();
  const double det = a.x() * b.y() - a.y() * b.x();
  const Eigen::VectorXd ax = powers(a.x(), m), bx = powers(b.x(), m);
  const Eigen::VectorXd ay = powers(a.y(), n), by = powers(b.y(), n);
  double sum = 0.0;
  for (int i = 0; i <= m; ++i) {
    const double tx = ax(i) * bx(m - i) / (f[i] * f[m - i]);
    for (int j = 0; j <= n; ++j) {
      const double ty = ay(j) * by(n - j) / (f[j] * f[n - j]);
      sum += tx * ty * f[i + j] * f[m - i + n - j];
    }
  }
  return det * f[m] * f[n] / f[m + n + 2] * sum;
}

double tetrahedron_monomial_integral(const Eigen::Vector3d& a, const Eigen::Vector3d& b, const Eigen::Vector3d& c,
                                     int m, int n, int k) {
  const auto& f = factorials();
  const double det = a.dot(b.cross(c));
  const std::array<int, 3> e{m, n, k};
  std::array<std::array<Eigen::VectorXd, 3>, 3> pw;  // pw[vertex][coord]
  const std::array<const Eigen::Vector3d*, 3> v{&a, &b, &c};
  for (int i = 0; i < 3; ++i)
    for (int d = 0; d < 3; ++d) pw[i][d] = powers((*v[i])(d), e[d]);

  // Split each coordinate exponent across the three vertices.
  auto compositions = [&](int d) {
    std::vector<std::pair<std::array<int, 3>, double>> out;
    for (int p = 0; p <= e[d]; ++p)
      for (int q = 0; q <= e[d] - p; ++q) {
        const int r = e[d] - p - q;
        const double w = pw[0][d](p) * pw[1][d](q) * pw[2][d](r) / (f[p] * f[q] * f[r]);
        out.push_back({{p, q, r}, w});
      }
    return out;
  };
  const auto cx = compositions(0), cy = compositions(1), cz = compositions(2);
  double sum = 0.0;
  for (const auto& [kx, wx] : cx) {
    if (wx == 0.0) continue;
    for (const auto& [ky, wy] : cy) {
      if (wy == 0.0) continue;
      const double wxy = wx * wy;
      for (const auto& [kz, wz] : cz) {
        sum += wxy * wz * f[kx[0] + ky[0] + kz[0]] * f[kx[1] + ky[1] + kz[1]] * f[kx[2] + ky[2] + kz[2]];
      }
    }
  }
  return det * f[m] * f[n] * f[k] / f[m + n + k + 3] * sum;
}

MomentTensor raw_moments(const Shape& shape, int max_order) {
  check_order(max_order);
  MomentTensor out(dimension(shape), max_order, MomentFrame::Origin);
  const auto exps = out.exponents();
  std::visit(overloaded{[&](const PointSet2& s) { accumulate_points<2>(s.points, s.weights, out); },
                        [&](const Raster& s) {
                          const PointSet2 p = to_points(s);
                          accumulate_points<2>(p.points, p.weights, out);
                        },
                        [&](const PointSet3& s) { accumulate_points<3>(s.points, s.weights, out); },
                        [&](const Polygon& s) {
                          const Eigen::Index nv = s.vertices.cols();
                          for (Eigen::Index i = 0; i < nv; ++i) {
                            const Eigen::Vector2d a = s.vertices.col(i), b = s.vertices.col((i + 1) % nv);
                            for (const auto& e : exps) out[e] += triangle_monomial_integral(a, b, e[0], e[1]);
                          }
                        },
                        [&](const TriMesh& s) {
                          for (Eigen::Index f = 0; f < s.faces.cols(); ++f) {
                            const Eigen::Vector3d a = s.vertices.col(s.faces(0, f));
                            const Eigen::Vector3d b = s.vertices.col(s.faces(1, f));
                            const Eigen::Vector3d c = s.vertices.col(s.faces(2, f));
                            for (const auto& e : exps) out[e] += tetrahedron_monomial_integral(a, b, c, e[0], e[1], e[2]);
                          }
                        }},
             shape);
  if (!(out.mass() > 0.0)) throw GeometryError("zero total mass");
  return out;
}

Eigen::VectorXd centroid(const Shape& shape) {
  const MomentTensor m = raw_moments(shape, 1);
  if (m.dimension() == 2) return Eigen::Vector2d(m(1, 0), m(0, 1)) / m.mass();
  return Eigen::Vector3d(m(1, 0, 0), m(0, 1, 0), m(0, 0, 1)) / m.mass();
}

MomentTensor central_moments(const Shape& shape, int max_order) {
  check_order(max_order);
  const Shape centered = translate(shape, -centroid(shape));
  MomentTensor raw = raw_moments(centered, max_order);
  MomentTensor out(raw.dimension(), max_order, MomentFrame::Centroid);
  for (const auto& e : raw.exponents()) out[e] = raw[e];
  return out;
}

MomentTensor transform_moments(const MomentTensor& mu, const Eigen::MatrixXd& map) {
  const int dim = mu.dimension();
  if (map.rows() != dim || map.cols() != dim) throw InputError("map dimension does not match moment tensor");
  MomentTensor out(dim, mu.max_order(), mu.about());
  using Poly = std::map<Exponents, double>;
  for (const auto& target : mu.exponents()) {
    Poly poly{{Exponents{0, 0, 0}, 1.0}};
    for (int c = 0; c < dim; ++c) {
      for (int p = 0; p < target[c]; ++p) {
        Poly next;
        for (const auto& [e, coef] : poly) {
          for (int j = 0; j < dim; ++j) {
            if (map(c, j) == 0.0) continue;
            Exponents f = e;
            ++f[j];
            next[f] += coef * map(c, j);
          }
        }
        poly = std::move(next);
      }
    }
    double v = 0.0;
    for (const auto& [e, coef] : poly) v += coef * mu[e];
    out[target] = v;
  }
  return out;
}

double gyration_radius(const MomentTensor& mu) {
  if (mu.max_order() < 2) throw InputError("gyration radius needs second-order moments");
  double trace = 0.0;
  for (const auto& e : exponents_of_order(mu.dimension(), 2)) {
    if (e[0] == 2 || e[1] == 2 || e[2] == 2) trace += mu[e];
  }
  if (mu.about() == MomentFrame::Origin) {
    // shift to the centroid
    for (const auto& e : exponents_of_order(mu.dimension(), 1)) trace -= mu[e] * mu[e] / mu.mass();
  }
  return std::sqrt(std::max(trace, 0.0) / mu.mass());
}

double moment_scale(const MomentTensor& mu, int mass_degree, int length_degree) {
  const double s = std::pow(mu.mass(), mass_degree) * std::pow(gyration_radius(mu), length_degree);
  return std::max(s, std::numeric_limits<double>::min());
}

bool point_in_polygon(const Polygon& polygon, const Eigen::Vector2d& p) {
  bool inside = false;
  const auto& v = polygon.vertices;
  const Eigen::Index n = v.cols();
  for (Eigen::Index i = 0, j = n - 1; i < n; j = i++) {
    const double yi = v(1, i), yj = v(1, j);
    if ((yi > p.y()) != (yj > p.y())) {
      const double x = v(0, j) + (p.y() - yj) * (v(0, i) - v(0, j)) / (yi - yj);
      if (p.x() < x) inside = !inside;
    }
  }
  return inside;
}

bool point_in_mesh(const TriMesh& mesh, const Eigen::Vector3d& p) {
  // Parity of crossings along a fixed generic ray.
  static const Eigen::Vector3d dir = Eigen::Vector3d(0.2718281828, 0.3141592653, 0.9093974).normalized();
  int crossings = 0;
  for (Eigen::Index f = 0; f < mesh.faces.cols(); ++f) {
    const Eigen::Vector3d a = mesh.vertices.col(mesh.faces(0, f));
    const Eigen::Vector3d e1 = mesh.vertices.col(mesh.faces(1, f)) - a;
    const Eigen::Vector3d e2 = mesh.vertices.col(mesh.faces(2, f)) - a;
    const Eigen::Vector3d h = dir.cross(e2);
    const double det = e1.dot(h);
    if (std::abs(det) < 1e-300) continue;
    const Eigen::Vector3d s = p - a;
    const double u = s.dot(h) / det;
    if (u < 0.0 || u > 1.0) continue;
    const Eigen::Vector3d q = s.cross(e1);
    const double v = dir.dot(q) / det;
    if (v < 0.0 || u + v > 1.0) continue;
    if (e2.dot(q) / det > 0.0) ++crossings;
  }
  return crossings % 2 == 1;
}

MonteCarloMoments monte_carlo_moments(const Shape& shape, int max_order, std::int64_t sample_count,
                                      std::uint64_t seed) {
  check_order(max_order);
  if (sample_count < 2) throw InputError("monte_carlo_moments needs at least 2 samples");
  const int dim = dimension(shape);
  Eigen::VectorXd lo, hi;
  std::function<bool(const Eigen::VectorXd&)> inside;
  if (const auto* poly = std::get_if<Polygon>(&shape)) {
    if (!(std::abs(signed_area(poly->vertices)) > 0.0)) throw GeometryError("degenerate polygon");
    lo = poly->vertices.rowwise().minCoeff();
    hi = poly->vertices.rowwise().maxCoeff();
    inside = [poly](const Eigen::VectorXd& x) { return point_in_polygon(*poly, Eigen::Vector2d(x)); };
  } else if (const auto* mesh = std::get_if<TriMesh>(&shape)) {
    if (!(std::abs(signed_volume(*mesh)) > 0.0)) throw GeometryError("degenerate mesh");
    lo = mesh->vertices.rowwise().minCoeff();
    hi = mesh->vertices.rowwise().maxCoeff();
    inside = [mesh](const Eigen::VectorXd& x) { return point_in_mesh(*mesh, Eigen::Vector3d(x)); };
  } else {
    throw InputError("monte_carlo_moments needs a polygon or mesh");
  }
  const double box = (hi - lo).prod();
  if (!(box > 0.0)) throw GeometryError("degenerate bounding box");

  MomentTensor sum(dim, max_order, MomentFrame::Origin), sum_sq(dim, max_order, MomentFrame::Origin);
  const auto exps = sum.exponents();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Eigen::VectorXd x(dim);
  std::array<Eigen::VectorXd, 3> pw;
  for (std::int64_t s = 0; s < sample_count; ++s) {
    for (int c = 0; c < dim; ++c) x(c) = lo(c) + (hi(c) - lo(c)) * unit(rng);
    if (!inside(x)) continue;
    for (int c = 0; c < dim; ++c) pw[c] = powers(x(c), max_order);
    for (const auto& e : exps) {
      double v = 1.0;
      for (int c = 0; c < dim; ++c) v *= pw[c](e[c]);
      sum[e] += v;
      sum_sq[e] += v * v;
    }
  }
  MonteCarloMoments out{MomentTensor(dim, max_order, MomentFrame::Origin),
                        MomentTensor(dim, max_order, MomentFrame::Origin), sample_count};
  const double n = static_cast<double>(sample_count);
  for (const auto& e : exps) {
    const double mean = sum[e] / n;
    const double var = std::max(sum_sq[e] / n - mean * mean, 0.0) * n / (n - 1.0);
    out.estimate[e] = box * mean;
    out.standard_error[e] = box * std::sqrt(var / n);
  }
  return out;
}

}  // namespace symdet
