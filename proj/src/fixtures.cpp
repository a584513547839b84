#include "symdet/fixtures.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "symdet/error.hpp"

namespace symdet::fixtures {

namespace {

const double kS3 = std::sqrt(3.0);
const double kPhi = std::numbers::phi;

Eigen::Matrix2Xd cols2(std::initializer_list<std::array<double, 2>> pts) {
  Eigen::Matrix2Xd m(2, static_cast<Eigen::Index>(pts.size()));
  Eigen::Index i = 0;
  for (const auto& p : pts) m.col(i++) << p[0], p[1];
  return m;
}

Eigen::Matrix3Xd cols3(const std::vector<Eigen::Vector3d>& pts) {
  Eigen::Matrix3Xd m(3, static_cast<Eigen::Index>(pts.size()));
  for (std::size_t i = 0; i < pts.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = pts[i];
  return m;
}

double cross2(const Eigen::Vector2d& a, const Eigen::Vector2d& b) { return a.x() * b.y() - a.y() * b.x(); }

}  // namespace

Polygon triangle_aob() { return make_polygon(cols2({{0, 0}, {3 * kS3, 0}, {0, 3}})); }

Polygon triangle_aob_prime() { return make_polygon(cols2({{0, 0}, {0, 3}, {-3 * kS3, 0}})); }

PointSet2 isosceles_points() {
  return make_points2(cols2({{0, 3}, {3 * kS3, 0}, {-3 * kS3, 0}}), Eigen::VectorXd());
}

TriMesh tetra_aobd() {
  return convex_hull_mesh(cols3({{0, 0, 1}, {0, 0, 0}, {kS3, 0, 0}, {0, -2, 0}}));
}

TriMesh tetra_aobc() { return convex_hull_mesh(cols3({{0, 0, 1}, {0, 0, 0}, {kS3, 0, 0}, {0, 2, 0}})); }

PointSet3 tetra_points() {
  return make_points3(cols3({{0, 0, 1}, {kS3, 0, 0}, {0, 2, 0}, {0, -2, 0}, {0, 0, 0}}), Eigen::VectorXd());
}

Polygon equilateral_triangle() { return make_polygon(cols2({{kS3 / 2, -0.5}, {0, 1}, {-kS3 / 2, -0.5}})); }

Polygon unit_square() { return make_polygon(cols2({{0, 0}, {1, 0}, {1, 1}, {0, 1}})); }

TriMesh tetrahedron() { return convex_hull_mesh(cols3({{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}})); }

TriMesh cube() {
  std::vector<Eigen::Vector3d> v;
  for (int i = 0; i < 8; ++i) v.emplace_back(i & 1 ? 1 : -1, i & 2 ? 1 : -1, i & 4 ? 1 : -1);
  return convex_hull_mesh(cols3(v));
}

TriMesh octahedron() {
  std::vector<Eigen::Vector3d> v;
  for (int axis = 0; axis < 3; ++axis)
    for (double s : {1.0, -1.0}) v.push_back(s * Eigen::Vector3d::Unit(axis));
  return convex_hull_mesh(cols3(v));
}

TriMesh icosahedron() {
  std::vector<Eigen::Vector3d> v;
  for (double a : {1.0, -1.0})
    for (double b : {kPhi, -kPhi}) {
      v.emplace_back(0, a, b);
      v.emplace_back(a, b, 0);
      v.emplace_back(b, 0, a);
    }
  return convex_hull_mesh(cols3(v));
}

TriMesh dodecahedron() {
  std::vector<Eigen::Vector3d> v;
  for (double a : {1.0, -1.0})
    for (double b : {1.0, -1.0})
      for (double c : {1.0, -1.0}) v.emplace_back(a, b, c);
  for (double a : {1.0, -1.0})
    for (double b : {1.0, -1.0}) {
      v.emplace_back(0, a / kPhi, b * kPhi);
      v.emplace_back(a / kPhi, b * kPhi, 0);
      v.emplace_back(b * kPhi, 0, a / kPhi);
    }
  return convex_hull_mesh(cols3(v));
}

TriMesh convex_hull_mesh(const Eigen::Matrix3Xd& vertices) {
  const Eigen::Index n = vertices.cols();
  if (n < 4) throw GeometryError("convex hull needs at least 4 vertices");
  const Eigen::Vector3d center = vertices.rowwise().mean();
  const double size = (vertices.colwise() - center).colwise().norm().maxCoeff();
  const double eps = 1e-9 * size;

  std::set<std::vector<int>> seen;
  std::vector<std::array<int, 3>> tris;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      for (Eigen::Index k = j + 1; k < n; ++k) {
        Eigen::Vector3d normal = (vertices.col(j) - vertices.col(i)).cross(vertices.col(k) - vertices.col(i));
        if (normal.norm() <= eps * size) continue;
        normal.normalize();
        const Eigen::VectorXd dist = normal.transpose() * (vertices.colwise() - vertices.col(i));
        if (dist.maxCoeff() > eps && dist.minCoeff() < -eps) continue;
        if (dist.maxCoeff() > eps) normal = -normal;
        std::vector<int> face;
        for (Eigen::Index m = 0; m < n; ++m)
          if (std::abs(dist(m)) <= eps) face.push_back(static_cast<int>(m));
        if (!seen.insert(face).second) continue;

        Eigen::Vector3d c = Eigen::Vector3d::Zero();
        for (int m : face) c += vertices.col(m);
        c /= static_cast<double>(face.size());
        const Eigen::Vector3d u = (vertices.col(face[0]) - c).normalized();
        const Eigen::Vector3d w = normal.cross(u);
        std::sort(face.begin(), face.end(), [&](int a, int b) {
          const Eigen::Vector3d pa = vertices.col(a) - c, pb = vertices.col(b) - c;
          return std::atan2(pa.dot(w), pa.dot(u)) < std::atan2(pb.dot(w), pb.dot(u));
        });
        for (std::size_t m = 1; m + 1 < face.size(); ++m) tris.push_back({face[0], face[m], face[m + 1]});
      }
  Eigen::Matrix3Xi faces(3, static_cast<Eigen::Index>(tris.size()));
  for (std::size_t f = 0; f < tris.size(); ++f)
    faces.col(static_cast<Eigen::Index>(f)) << tris[f][0], tris[f][1], tris[f][2];
  return make_mesh(vertices, faces);
}

Polygon weyl_polygon() {
  return make_polygon(cols2({{0.5, -kS3 / 2},
                             {1, -kS3},
                             {1.5, -kS3 / 2},
                             {1, 0},
                             {1.5, kS3 / 2},
                             {0.5, kS3 / 2},
                             {0, 0},
                             {-1, 0},
                             {-0.5, -kS3 / 2}}));
}

TriMesh weyl_prism(double height) {
  if (!(height > 0)) throw InputError("prism height must be positive");
  const Eigen::Matrix2Xd p = weyl_polygon().vertices;
  const int n = static_cast<int>(p.cols());
  Eigen::Matrix3Xd v(3, 2 * n);
  for (int i = 0; i < n; ++i) {
    v.col(i) << p(0, i), p(1, i), -height / 2;
    v.col(n + i) << p(0, i), p(1, i), height / 2;
  }
  std::vector<std::array<int, 3>> tris;
  for (const auto& t : triangulate_polygon(p)) {
    tris.push_back({n + t[0], n + t[1], n + t[2]});
    tris.push_back({t[0], t[2], t[1]});
  }
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    tris.push_back({i, j, n + j});
    tris.push_back({i, n + j, n + i});
  }
  Eigen::Matrix3Xi faces(3, static_cast<Eigen::Index>(tris.size()));
  for (std::size_t f = 0; f < tris.size(); ++f)
    faces.col(static_cast<Eigen::Index>(f)) << tris[f][0], tris[f][1], tris[f][2];
  return make_mesh(v, faces);
}

std::vector<std::array<int, 3>> triangulate_polygon(const Eigen::Matrix2Xd& vertices) {
  std::vector<int> ring(static_cast<std::size_t>(vertices.cols()));
  for (std::size_t i = 0; i < ring.size(); ++i) ring[i] = static_cast<int>(i);
  std::vector<std::array<int, 3>> out;
  auto inside = [&](const Eigen::Vector2d& p, int a, int b, int c) {
    const Eigen::Vector2d pa = vertices.col(a), pb = vertices.col(b), pc = vertices.col(c);
    return cross2(pb - pa, p - pa) >= 0 && cross2(pc - pb, p - pb) >= 0 && cross2(pa - pc, p - pc) >= 0;
  };
  while (ring.size() > 3) {
    bool clipped = false;
    for (std::size_t i = 0; i < ring.size() && !clipped; ++i) {
      const int a = ring[(i + ring.size() - 1) % ring.size()], b = ring[i], c = ring[(i + 1) % ring.size()];
      if (cross2(vertices.col(b) - vertices.col(a), vertices.col(c) - vertices.col(b)) <= 0) continue;
      const bool blocked = std::any_of(ring.begin(), ring.end(), [&](int m) {
        return m != a && m != b && m != c && inside(vertices.col(m), a, b, c);
      });
      if (blocked) continue;
      out.push_back({a, b, c});
      ring.erase(ring.begin() + static_cast<std::ptrdiff_t>(i));
      clipped = true;
    }
    if (!clipped) throw GeometryError("polygon could not be triangulated");
  }
  out.push_back({ring[0], ring[1], ring[2]});
  return out;
}

PointSet2 noisy_square_cloud(int per_side, double sigma, std::uint64_t seed) {
  if (per_side < 1) throw InputError("grid size must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, sigma);
  Eigen::Matrix2Xd pts(2, per_side * per_side);
  for (int r = 0; r < per_side; ++r)
    for (int c = 0; c < per_side; ++c) {
      const double x = (c + 0.5) / per_side, y = (r + 0.5) / per_side;
      pts.col(r * per_side + c) << x + noise(rng), y + noise(rng);
    }
  return make_points2(std::move(pts), Eigen::VectorXd());
}

const std::vector<std::string>& names() {
  static const std::vector<std::string> all{
      "triangle-aob", "triangle-aob-prime", "isosceles-points", "tetra-aobd",  "tetra-aobc",
      "tetra-points", "equilateral-triangle", "square",         "tetrahedron", "cube",
      "octahedron",   "dodecahedron",       "icosahedron",      "weyl",        "weyl-prism"};
  return all;
}

Shape by_name(const std::string& name) {
  if (name == "triangle-aob") return triangle_aob();
  if (name == "triangle-aob-prime") return triangle_aob_prime();
  if (name == "isosceles-points") return isosceles_points();
  if (name == "tetra-aobd") return tetra_aobd();
  if (name == "tetra-aobc") return tetra_aobc();
  if (name == "tetra-points") return tetra_points();
  if (name == "equilateral-triangle") return equilateral_triangle();
  if (name == "square") return unit_square();
  if (name == "tetrahedron") return tetrahedron();
  if (name == "cube") return cube();
  if (name == "octahedron") return octahedron();
  if (name == "dodecahedron") return dodecahedron();
  if (name == "icosahedron") return icosahedron();
  if (name == "weyl") return weyl_polygon();
  if (name == "weyl-prism") return weyl_prism();
  throw InputError("unknown fixture '" + name + "'");
}

}  // namespace symdet::fixtures
