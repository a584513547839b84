#pragma once

// Independent reference computations used to check the library. None of these
// call into the code paths they are checking.

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "symdet/moments.hpp"
#include "symdet/pi_expression.hpp"
#include "symdet/shapes.hpp"

namespace oracle {

inline double rel_diff(double a, double b, double floor = 1e-300) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), floor});
}

/// Gauss-Legendre nodes and weights on [0, 1] by Newton on P_n.
inline std::vector<std::pair<double, double>> gauss01(int n) {
  std::vector<std::pair<double, double>> out;
  for (int i = 1; i <= n; ++i) {
    double x = std::cos(std::numbers::pi * (i - 0.25) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    out.emplace_back((x + 1) / 2, 1.0 / ((1 - x * x) * dp * dp));
  }
  return out;
}

/// int x^m y^n dA over a simple polygon via Green: the boundary integral of x^(m+1) y^n / (m+1) dy.
inline double polygon_moment(const Eigen::Matrix2Xd& v, int m, int n) {
  const auto rule = gauss01((m + n + 2) / 2 + 2);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < v.cols(); ++i) {
    const Eigen::Vector2d a = v.col(i), b = v.col((i + 1) % v.cols());
    for (const auto& [t, w] : rule) {
      const Eigen::Vector2d p = a + t * (b - a);
      sum += w * std::pow(p.x(), m + 1) * std::pow(p.y(), n) / (m + 1) * (b.y() - a.y());
    }
  }
  return sum;
}

/// int x^a y^b z^c dV over a closed outward mesh via the divergence theorem,
/// each triangle integrated with a collapsed Gauss product rule.
inline double mesh_moment(const symdet::TriMesh& mesh, int a, int b, int c) {
  const auto rule = gauss01((a + b + c + 3) / 2 + 2);
  double sum = 0.0;
  for (Eigen::Index f = 0; f < mesh.faces.cols(); ++f) {
    const Eigen::Vector3d p0 = mesh.vertices.col(mesh.faces(0, f));
    const Eigen::Vector3d p1 = mesh.vertices.col(mesh.faces(1, f));
    const Eigen::Vector3d p2 = mesh.vertices.col(mesh.faces(2, f));
    const Eigen::Vector3d area_normal = (p1 - p0).cross(p2 - p0);  // |.| = 2 * area
    for (const auto& [u, wu] : rule)
      for (const auto& [v, wv] : rule) {
        const Eigen::Vector3d p = p0 + u * (p1 - p0) + u * v * (p2 - p1);
        const double jac = u;  // dS = |area_normal| u du dv
        sum += wu * wv * jac * std::pow(p.x(), a + 1) * std::pow(p.y(), b) * std::pow(p.z(), c) / (a + 1) *
               area_normal.x();
      }
  }
  return sum;
}

/// Direct weighted sums over points.
template <int Dim>
double point_moment(const symdet::PointSet<Dim>& s, int a, int b, int c = 0) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    double v = s.weights(i) * std::pow(s.points(0, i), a) * std::pow(s.points(1, i), b);
    if constexpr (Dim == 3) v *= std::pow(s.points(2, i), c);
    sum += v;
  }
  return sum;
}

/// Central moment of a polygon from the Green oracle, expanding (x - cx)^m (y - cy)^n binomially.
inline double polygon_central(const Eigen::Matrix2Xd& v, int m, int n) {
  const double area = polygon_moment(v, 0, 0);
  const double cx = polygon_moment(v, 1, 0) / area, cy = polygon_moment(v, 0, 1) / area;
  double sum = 0.0;
  auto binom = [](int N, int k) {
    double r = 1;
    for (int i = 1; i <= k; ++i) r = r * (N - k + i) / i;
    return r;
  };
  for (int i = 0; i <= m; ++i)
    for (int j = 0; j <= n; ++j)
      sum += binom(m, i) * binom(n, j) * std::pow(-cx, m - i) * std::pow(-cy, n - j) * polygon_moment(v, i, j);
  return sum;
}

/// Hu's invariants through complex moments c_pq = int (x+iy)^p (x-iy)^q of central moments.
inline std::array<double, 7> hu_from_complex(const symdet::MomentTensor& mu) {
  using C = std::complex<double>;
  auto c = [&](int p, int q) {
    C sum = 0;
    // (x+iy)^p (x-iy)^q expanded; coefficient of x^a y^b collected by brute force
    for (int i = 0; i <= p; ++i)
      for (int j = 0; j <= q; ++j) {
        double bp = 1, bq = 1;
        for (int k = 1; k <= i; ++k) bp = bp * (p - i + k) / k;
        for (int k = 1; k <= j; ++k) bq = bq * (q - j + k) / k;
        const C coef = bp * bq * std::pow(C(0, 1), i) * std::pow(C(0, -1), j);
        sum += coef * mu(p + q - i - j, i + j);
      }
    return sum;
  };
  const C c11 = c(1, 1), c20 = c(2, 0), c30 = c(3, 0), c21 = c(2, 1), c12 = c(1, 2);
  return {c11.real(),
          std::norm(c20),
          std::norm(c30),
          std::norm(c21),
          (c30 * std::pow(c12, 3)).real(),
          (c20 * c12 * c12).real(),
          (c30 * std::pow(c12, 3)).imag()};
}

/// The two order-3 reflection invariants as printed, written out term by term.
inline std::array<double, 2> printed_reflection_pair(const symdet::MomentTensor& mu) {
  const double d = mu(2, 0) - mu(0, 2), m11 = mu(1, 1);
  const double m30 = mu(3, 0), m21 = mu(2, 1), m12 = mu(1, 2), m03 = mu(0, 3);
  const double first = d * m03 * m12 + 2 * d * m12 * m21 + d * m21 * m30 + m11 * m03 * m03 + m11 * m12 * m12 -
                       m11 * m21 * m21 - m11 * m30 * m30;
  const double second = d * m03 * m30 - d * m12 * m21 + 2 * m11 * m21 * m03 + 2 * m11 * m21 * m21 -
                        2 * m11 * m12 * m12 - 2 * m11 * m12 * m30;
  return {first, second};
}

/// Random centroid-frame tensor: unit mass, zero first moments, other entries uniform in [-1, 1].
inline symdet::MomentTensor random_central_tensor(std::mt19937_64& rng, int dim, int order) {
  std::uniform_real_distribution<double> u(-1, 1);
  symdet::MomentTensor mu(dim, order, symdet::MomentFrame::Centroid);
  for (const auto& e : mu.exponents()) {
    const int k = e[0] + e[1] + e[2];
    mu[e] = k == 0 ? 1.0 : k == 1 ? 0.0 : u(rng);
  }
  if (order >= 2) {
    // keep the second-order block positive definite so it looks like a real body
    mu(2, 0) = 2 + std::abs(mu(2, 0));
    if (dim == 2) {
      mu(0, 2) = 2 + std::abs(mu(0, 2));
    } else {
      mu(0, 2, 0) = 2 + std::abs(mu(0, 2, 0));
      mu(0, 0, 2) = 2 + std::abs(mu(0, 0, 2));
    }
  }
  return mu;
}

/// Random product of at most 4 factors over at most 4 points; determinant factors use distinct points.
inline symdet::PIExpression random_pi(std::mt19937_64& rng, int dim) {
  using symdet::FactorKind;
  std::uniform_int_distribution<int> coin(0, 1);
  for (;;) {
    const int points = std::uniform_int_distribution<int>(1, 4)(rng);
    const int count = std::uniform_int_distribution<int>(1, 4)(rng);
    std::uniform_int_distribution<int> pick(1, points);
    std::vector<symdet::PIFactor> factors;
    for (int i = 0; i < count; ++i) {
      const bool det = points >= dim && coin(rng) == 1;
      symdet::PIFactor f{dim == 2 ? (det ? FactorKind::Det2 : FactorKind::Dot2) : (det ? FactorKind::Det3 : FactorKind::Dot3), {}};
      for (int k = 0; k < f.arity(); ++k) f.points[static_cast<std::size_t>(k)] = pick(rng);
      if (det) {
        std::vector<int> idx(f.points.begin(), f.points.begin() + f.arity());
        std::sort(idx.begin(), idx.end());
        if (std::adjacent_find(idx.begin(), idx.end()) != idx.end()) continue;
      }
      factors.push_back(f);
    }
    if (factors.empty()) continue;
    std::vector<bool> used(static_cast<std::size_t>(points) + 1, false);
    for (const auto& f : factors)
      for (int k = 0; k < f.arity(); ++k) used[static_cast<std::size_t>(f.points[static_cast<std::size_t>(k)])] = true;
    if (std::count(used.begin() + 1, used.end(), true) == points) return symdet::PIExpression(factors);
  }
}

/// Random direction uniformly on the sphere.
inline Eigen::Vector3d random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::Vector3d v(g(rng), g(rng), g(rng));
  return v.normalized();
}

inline Eigen::Matrix3d random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::Quaterniond q(g(rng), g(rng), g(rng), g(rng));
  return q.normalized().toRotationMatrix();
}

inline Eigen::Matrix2d rotation2(double t) {
  Eigen::Matrix2d r;
  r << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
  return r;
}

/// Random convex polygon: sorted random angles on a jittered circle, convex hull by monotone chain.
inline Eigen::Matrix2Xd random_convex_polygon(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<Eigen::Vector2d> pts;
  for (int i = 0; i < n; ++i) {
    const double t = 2 * std::numbers::pi * u(rng), r = 0.5 + u(rng);
    pts.emplace_back(r * std::cos(t) + 0.3, r * std::sin(t) - 0.2);
  }
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y()); });
  auto cross = [](const Eigen::Vector2d& o, const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    return (a - o).x() * (b - o).y() - (a - o).y() * (b - o).x();
  };
  std::vector<Eigen::Vector2d> hull;
  for (int pass = 0; pass < 2; ++pass) {
    const std::size_t start = hull.size();
    for (const auto& p : pts) {
      while (hull.size() >= start + 2 && cross(hull[hull.size() - 2], hull.back(), p) <= 0) hull.pop_back();
      hull.push_back(p);
    }
    hull.pop_back();
    std::reverse(pts.begin(), pts.end());
  }
  Eigen::Matrix2Xd out(2, static_cast<Eigen::Index>(hull.size()));
  for (std::size_t i = 0; i < hull.size(); ++i) out.col(static_cast<Eigen::Index>(i)) = hull[i];
  return out;
}

/// Analytic mirror-plane normals of the Platonic solids in the fixtures' orientation.
inline std::vector<Eigen::Vector3d> platonic_mirror_normals(const std::string& name) {
  std::vector<Eigen::Vector3d> out;
  const double s = 1 / std::sqrt(2.0);
  auto diagonals = [&] {
    for (int i = 0; i < 3; ++i) {
      const int j = (i + 1) % 3;
      Eigen::Vector3d a = Eigen::Vector3d::Zero(), b = Eigen::Vector3d::Zero();
      a(i) = s, a(j) = s;
      b(i) = s, b(j) = -s;
      out.push_back(a);
      out.push_back(b);
    }
  };
  if (name == "tetrahedron") {
    diagonals();
  } else if (name == "cube" || name == "octahedron") {
    for (int i = 0; i < 3; ++i) out.push_back(Eigen::Vector3d::Unit(i));
    diagonals();
  } else {
    const double phi = std::numbers::phi;
    for (int i = 0; i < 3; ++i) out.push_back(Eigen::Vector3d::Unit(i));
    for (double sb : {1.0, -1.0})
      for (double sc : {1.0, -1.0}) {
        // perpendicular bisectors of edges; the two solids are in opposite cyclic orientations
        const Eigen::Vector3d base = name == "icosahedron" ? Eigen::Vector3d(0.5, sb / (2 * phi), sc * phi / 2)
                                                           : Eigen::Vector3d(0.5, sb * phi / 2, sc / (2 * phi));
        for (int r = 0; r < 3; ++r) out.emplace_back(base((3 - r) % 3), base((4 - r) % 3), base((5 - r) % 3));
      }
  }
  return out;
}

/// Undirected angle between lines.
inline double line_angle(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  return std::acos(std::min(1.0, std::abs(a.normalized().dot(b.normalized()))));
}

/// Every expected direction matched by exactly one found direction within tol, and vice versa.
inline bool same_line_sets(const std::vector<Eigen::Vector3d>& found, const std::vector<Eigen::Vector3d>& expected,
                           double tol) {
  if (found.size() != expected.size()) return false;
  for (const auto& e : expected) {
    int hits = 0;
    for (const auto& f : found) hits += line_angle(e, f) <= tol;
    if (hits != 1) return false;
  }
  return true;
}

}  // namespace oracle
