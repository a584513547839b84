#include "symdet/shapes.hpp"

#include <algorithm>
#include <Eigen/Geometry>
#include <map>
#include <numbers>
#include <utility>

namespace symdet {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

template <int Dim>
PointSet<Dim> make_points(Eigen::Matrix<double, Dim, Eigen::Dynamic> points, Eigen::VectorXd weights) {
  if (weights.size() == 0) weights = Eigen::VectorXd::Ones(points.cols());
  if (weights.size() != points.cols()) throw GeometryError("point/weight count mismatch");
  if (points.cols() == 0) throw GeometryError("empty point set");
  if (!points.allFinite()) throw GeometryError("non-finite point coordinate");
  for (Eigen::Index i = 0; i < weights.size(); ++i) {
    if (!std::isfinite(weights(i)) || weights(i) < 0.0)
      throw GeometryError("point weight must be finite and non-negative (point " + std::to_string(i) + ")");
  }
  if (!(weights.sum() > 0.0)) throw GeometryError("zero total mass");
  return {std::move(points), std::move(weights)};
}

double orient(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c) {
  return (b - a).x() * (c - a).y() - (b - a).y() * (c - a).x();
}

bool on_segment(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& p) {
  return std::min(a.x(), b.x()) <= p.x() && p.x() <= std::max(a.x(), b.x()) &&
         std::min(a.y(), b.y()) <= p.y() && p.y() <= std::max(a.y(), b.y());
}

bool segments_intersect(const Eigen::Vector2d& p1, const Eigen::Vector2d& p2,
                        const Eigen::Vector2d& q1, const Eigen::Vector2d& q2) {
  const double d1 = orient(q1, q2, p1);
  const double d2 = orient(q1, q2, p2);
  const double d3 = orient(p1, p2, q1);
  const double d4 = orient(p1, p2, q2);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) return true;
  if (d1 == 0 && on_segment(q1, q2, p1)) return true;
  if (d2 == 0 && on_segment(q1, q2, p2)) return true;
  if (d3 == 0 && on_segment(p1, p2, q1)) return true;
  if (d4 == 0 && on_segment(p1, p2, q2)) return true;
  return false;
}

template <int Dim>
std::pair<PointSet<Dim>, PointSet<Dim>> split_points(const PointSet<Dim>& shape,
                                                     const Eigen::Matrix<double, Dim, 1>& normal, double eps) {
  std::vector<Eigen::Index> left, right;
  std::vector<double> wl, wr;
  for (Eigen::Index i = 0; i < shape.size(); ++i) {
    const double s = normal.dot(shape.points.col(i));
    const double w = shape.weights(i);
    if (std::abs(s) <= eps) {
      left.push_back(i), wl.push_back(0.5 * w);
      right.push_back(i), wr.push_back(0.5 * w);
    } else if (s > 0) {
      left.push_back(i), wl.push_back(w);
    } else {
      right.push_back(i), wr.push_back(w);
    }
  }
  auto gather = [&](const std::vector<Eigen::Index>& idx, const std::vector<double>& w) {
    PointSet<Dim> out;
    out.points.resize(Dim, static_cast<Eigen::Index>(idx.size()));
    out.weights.resize(static_cast<Eigen::Index>(idx.size()));
    for (std::size_t k = 0; k < idx.size(); ++k) {
      out.points.col(static_cast<Eigen::Index>(k)) = shape.points.col(idx[k]);
      out.weights(static_cast<Eigen::Index>(k)) = w[k];
    }
    return out;
  };
  PointSet<Dim> l = gather(left, wl);
  PointSet<Dim> r = gather(right, wr);
  if (!(l.total_mass() > 0.0) || !(r.total_mass() > 0.0)) throw DegenerateSplit("split leaves one side empty");
  return {std::move(l), std::move(r)};
}

}  // namespace

int dimension(const Shape& shape) {
  return std::visit(overloaded{[](const PointSet2&) { return 2; }, [](const Polygon&) { return 2; },
                               [](const Raster&) { return 2; }, [](const PointSet3&) { return 3; },
                               [](const TriMesh&) { return 3; }},
                    shape);
}

std::string_view kind_name(const Shape& shape) {
  return std::visit(overloaded{[](const PointSet2&) { return std::string_view("points2d"); },
                               [](const Polygon&) { return std::string_view("polygon2d"); },
                               [](const Raster&) { return std::string_view("raster2d"); },
                               [](const PointSet3&) { return std::string_view("points3d"); },
                               [](const TriMesh&) { return std::string_view("mesh3d"); }},
                    shape);
}

PointSet2 make_points2(Eigen::Matrix2Xd points, Eigen::VectorXd weights) {
  return make_points<2>(std::move(points), std::move(weights));
}

PointSet3 make_points3(Eigen::Matrix3Xd points, Eigen::VectorXd weights) {
  return make_points<3>(std::move(points), std::move(weights));
}

double signed_area(const Eigen::Matrix2Xd& v) {
  double a = 0.0;
  const Eigen::Index n = v.cols();
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index j = (i + 1) % n;
    a += v(0, i) * v(1, j) - v(0, j) * v(1, i);
  }
  return 0.5 * a;
}

bool is_simple(const Eigen::Matrix2Xd& v) {
  const Eigen::Index n = v.cols();
  if (n < 3) return false;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Vector2d a = v.col(i), b = v.col((i + 1) % n), c = v.col((i + 2) % n);
    if (a == b) return false;
    // adjacent edges folding back onto each other
    if (orient(a, b, c) == 0.0 && (b - a).dot(c - b) < 0.0) return false;
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      if (segments_intersect(v.col(i), v.col((i + 1) % n), v.col(j), v.col((j + 1) % n))) return false;
    }
  }
  return true;
}

Polygon make_polygon(Eigen::Matrix2Xd vertices) {
  if (vertices.cols() < 3) throw GeometryError("polygon needs at least 3 vertices");
  if (!vertices.allFinite()) throw GeometryError("non-finite polygon vertex");
  if (!is_simple(vertices)) throw GeometryError("polygon is self-intersecting");
  const double a = signed_area(vertices);
  if (a == 0.0) throw GeometryError("zero total mass (degenerate polygon)");
  if (a < 0.0) vertices = vertices.rowwise().reverse().eval();
  return {std::move(vertices)};
}

Raster make_raster(Eigen::MatrixXd mass, double spacing, const Eigen::Vector2d& origin) {
  if (!(spacing > 0.0) || !std::isfinite(spacing)) throw GeometryError("raster spacing must be positive");
  if (!mass.allFinite() || (mass.array() < 0.0).any()) throw GeometryError("raster masses must be finite and non-negative");
  if (!(mass.sum() > 0.0)) throw GeometryError("zero total mass");
  return {std::move(mass), spacing, origin};
}

bool is_closed_oriented(const Eigen::Matrix3Xi& faces, Eigen::Index vertex_count) {
  std::map<std::pair<int, int>, int> edges;
  for (Eigen::Index f = 0; f < faces.cols(); ++f) {
    for (int e = 0; e < 3; ++e) {
      const int a = faces(e, f), b = faces((e + 1) % 3, f);
      if (a < 0 || b < 0 || a >= vertex_count || b >= vertex_count || a == b) return false;
      if (++edges[{a, b}] > 1) return false;
    }
  }
  for (const auto& [edge, count] : edges) {
    const auto it = edges.find({edge.second, edge.first});
    if (it == edges.end() || it->second != 1) return false;
  }
  return !edges.empty();
}

double signed_volume(const TriMesh& mesh) {
  double v = 0.0;
  for (Eigen::Index f = 0; f < mesh.faces.cols(); ++f) {
    const Eigen::Vector3d a = mesh.vertices.col(mesh.faces(0, f));
    const Eigen::Vector3d b = mesh.vertices.col(mesh.faces(1, f));
    const Eigen::Vector3d c = mesh.vertices.col(mesh.faces(2, f));
    v += a.dot(b.cross(c));
  }
  return v / 6.0;
}

TriMesh make_mesh(Eigen::Matrix3Xd vertices, Eigen::Matrix3Xi faces) {
  if (!vertices.allFinite()) throw GeometryError("non-finite mesh vertex");
  if (faces.cols() < 4) throw GeometryError("mesh needs at least 4 triangles to be closed");
  if (!is_closed_oriented(faces, vertices.cols()))
    throw GeometryError("mesh is open or inconsistently oriented (every edge must be shared by two opposite triangles)");
  TriMesh mesh{std::move(vertices), std::move(faces)};
  const double vol = signed_volume(mesh);
  if (vol == 0.0) throw GeometryError("zero total mass (mesh encloses no volume)");
  if (vol < 0.0) mesh.faces.row(1).swap(mesh.faces.row(2));
  return mesh;
}

PointSet2 to_points(const Raster& raster) {
  const Eigen::Index rows = raster.mass.rows(), cols = raster.mass.cols();
  PointSet2 out;
  out.points.resize(2, rows * cols);
  out.weights.resize(rows * cols);
  Eigen::Index k = 0;
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c, ++k) {
      out.points.col(k) = raster.origin + raster.spacing * Eigen::Vector2d(double(c), double(r));
      out.weights(k) = raster.mass(r, c);
    }
  }
  return out;
}

double bbox_diagonal(const Shape& shape) {
  auto diag = [](const auto& pts) { return (pts.rowwise().maxCoeff() - pts.rowwise().minCoeff()).norm(); };
  return std::visit(overloaded{[&](const PointSet2& s) { return diag(s.points); },
                               [&](const Polygon& s) { return diag(s.vertices); },
                               [&](const Raster& s) { return diag(to_points(s).points); },
                               [&](const PointSet3& s) { return diag(s.points); },
                               [&](const TriMesh& s) { return diag(s.vertices); }},
                    shape);
}

double reduce_angle_mod_pi(double angle) {
  double a = std::fmod(angle, std::numbers::pi);
  if (a < 0.0) a += std::numbers::pi;
  if (a >= std::numbers::pi) a -= std::numbers::pi;
  return a;
}

LineThroughOrigin::LineThroughOrigin(double angle) : angle_(reduce_angle_mod_pi(angle)) {
  if (!std::isfinite(angle)) throw InputError("line angle must be finite");
}

Eigen::Vector3d canonical_direction(const Eigen::Vector3d& v) {
  const double n = v.norm();
  if (!(n > 0.0)) throw InputError("zero direction");
  Eigen::Vector3d u = v / n;
  for (int i = 0; i < 3; ++i) {
    if (std::abs(u(i)) > 1e-9) {
      if (u(i) < 0.0) u = -u;
      break;
    }
  }
  return u;
}

PlaneThroughOrigin::PlaneThroughOrigin(const Eigen::Vector3d& normal) : normal_(canonical_direction(normal)) {}

Shape apply_linear(const Shape& shape, const Eigen::MatrixXd& map) {
  const int dim = dimension(shape);
  if (map.rows() != dim || map.cols() != dim) throw InputError("linear map dimension does not match shape");
  const double det = map.determinant();
  if (!std::isfinite(det) || std::abs(det) <= 1e-14 * std::pow(map.cwiseAbs().maxCoeff(), dim))
    throw InputError("singular linear map");
  return std::visit(
      overloaded{
          [&](const PointSet2& s) -> Shape { return PointSet2{map * s.points, s.weights}; },
          [&](const Raster& s) -> Shape {
            const PointSet2 p = to_points(s);
            return PointSet2{map * p.points, p.weights};
          },
          [&](const Polygon& s) -> Shape {
            Eigen::Matrix2Xd v = map * s.vertices;
            if (det < 0.0) v = v.rowwise().reverse().eval();
            return Polygon{std::move(v)};
          },
          [&](const PointSet3& s) -> Shape { return PointSet3{map * s.points, s.weights}; },
          [&](const TriMesh& s) -> Shape {
            TriMesh out{map * s.vertices, s.faces};
            if (det < 0.0) out.faces.row(1).swap(out.faces.row(2));
            return out;
          }},
      shape);
}

Shape translate(const Shape& shape, const Eigen::VectorXd& offset) {
  if (offset.size() != dimension(shape)) throw InputError("offset dimension does not match shape");
  if (!offset.allFinite()) throw InputError("offset must be finite");
  return std::visit(
      overloaded{[&](const PointSet2& s) -> Shape {
                   return PointSet2{s.points.colwise() + Eigen::Vector2d(offset), s.weights};
                 },
                 [&](const Raster& s) -> Shape { return Raster{s.mass, s.spacing, s.origin + Eigen::Vector2d(offset)}; },
                 [&](const Polygon& s) -> Shape { return Polygon{s.vertices.colwise() + Eigen::Vector2d(offset)}; },
                 [&](const PointSet3& s) -> Shape {
                   return PointSet3{s.points.colwise() + Eigen::Vector3d(offset), s.weights};
                 },
                 [&](const TriMesh& s) -> Shape {
                   return TriMesh{s.vertices.colwise() + Eigen::Vector3d(offset), s.faces};
                 }},
      shape);
}

Eigen::Matrix2Xd clip_half_plane(const Eigen::Matrix2Xd& v, const Eigen::Vector2d& normal) {
  std::vector<Eigen::Vector2d> out;
  const Eigen::Index n = v.cols();
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Vector2d p = v.col(i), q = v.col((i + 1) % n);
    const double dp = normal.dot(p), dq = normal.dot(q);
    if (dp >= 0.0) out.push_back(p);
    if ((dp >= 0.0) != (dq >= 0.0)) {
      const double t = dp / (dp - dq);
      out.push_back(p + t * (q - p));
    }
  }
  Eigen::Matrix2Xd m(2, static_cast<Eigen::Index>(out.size()));
  for (std::size_t i = 0; i < out.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = out[i];
  return m;
}

std::pair<Shape, Shape> split_by_line(const Shape& shape, const LineThroughOrigin& axis) {
  const Eigen::Vector2d n = axis.normal();
  const double eps = 1e-9 * bbox_diagonal(shape);
  return std::visit(
      overloaded{
          [&](const PointSet2& s) -> std::pair<Shape, Shape> { return split_points<2>(s, n, eps); },
          [&](const Raster& s) -> std::pair<Shape, Shape> { return split_points<2>(to_points(s), n, eps); },
          [&](const Polygon& s) -> std::pair<Shape, Shape> {
            Polygon left{clip_half_plane(s.vertices, n)};
            Polygon right{clip_half_plane(s.vertices, -n)};
            const double total = signed_area(s.vertices);
            const double al = left.vertices.cols() >= 3 ? signed_area(left.vertices) : 0.0;
            const double ar = right.vertices.cols() >= 3 ? signed_area(right.vertices) : 0.0;
            if (al <= 1e-12 * total || ar <= 1e-12 * total) throw DegenerateSplit("split leaves one side empty");
            return {std::move(left), std::move(right)};
          },
          [&](const PointSet3&) -> std::pair<Shape, Shape> { throw InputError("split_by_line needs a 2D shape"); },
          [&](const TriMesh&) -> std::pair<Shape, Shape> { throw InputError("split_by_line needs a 2D shape"); }},
      shape);
}

std::pair<PointSet3, PointSet3> split_by_plane(const PointSet3& shape, const PlaneThroughOrigin& plane) {
  const double eps = 1e-9 * bbox_diagonal(Shape{shape});
  // left is the side behind the normal
  return split_points<3>(shape, Eigen::Vector3d(-plane.normal()), eps);
}

}  // namespace symdet
