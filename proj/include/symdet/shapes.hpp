#pragma once

#include <Eigen/Core>
#include <Eigen/LU>

#include <cmath>
#include <string_view>
#include <utility>
#include <variant>

#include "symdet/error.hpp"

namespace symdet {

/// Weighted point masses in Dim dimensions. Column i of `points` carries mass `weights(i)`.
template <int Dim>
struct PointSet {
  Eigen::Matrix<double, Dim, Eigen::Dynamic> points;
  Eigen::VectorXd weights;

  Eigen::Index size() const { return points.cols(); }
  double total_mass() const { return weights.sum(); }
};

using PointSet2 = PointSet<2>;
using PointSet3 = PointSet<3>;

/// Simple polygon of uniform unit density, vertices counterclockwise.
struct Polygon {
  Eigen::Matrix2Xd vertices;
};

/// Grid of cell masses. `mass(r, c)` sits at origin + spacing * (c, r); row 0 is the bottom row.
struct Raster {
  Eigen::MatrixXd mass;
  double spacing = 1.0;
  Eigen::Vector2d origin = Eigen::Vector2d::Zero();
};

/// Closed, consistently oriented triangle surface bounding a uniform solid.
/// Faces are stored so that the enclosed signed volume is positive.
struct TriMesh {
  Eigen::Matrix3Xd vertices;
  Eigen::Matrix3Xi faces;
};

using Shape = std::variant<PointSet2, Polygon, Raster, PointSet3, TriMesh>;

int dimension(const Shape& shape);
std::string_view kind_name(const Shape& shape);

// --- validated construction -------------------------------------------------

PointSet2 make_points2(Eigen::Matrix2Xd points, Eigen::VectorXd weights);
PointSet3 make_points3(Eigen::Matrix3Xd points, Eigen::VectorXd weights);
/// Checks simplicity and reorders to counterclockwise.
Polygon make_polygon(Eigen::Matrix2Xd vertices);
Raster make_raster(Eigen::MatrixXd mass, double spacing = 1.0,
                   const Eigen::Vector2d& origin = Eigen::Vector2d::Zero());
/// Checks closure and consistent orientation, then flips to positive volume.
TriMesh make_mesh(Eigen::Matrix3Xd vertices, Eigen::Matrix3Xi faces);

double signed_area(const Eigen::Matrix2Xd& vertices);
double signed_volume(const TriMesh& mesh);
bool is_simple(const Eigen::Matrix2Xd& vertices);
/// True iff every directed edge is matched by exactly one reversed edge.
bool is_closed_oriented(const Eigen::Matrix3Xi& faces, Eigen::Index vertex_count);

PointSet2 to_points(const Raster& raster);

/// Diagonal of the axis-aligned bounding box.
double bbox_diagonal(const Shape& shape);

// --- Householder reflections ------------------------------------------------

/// I - 2 v v^T for the unit normal (a, b); the input is renormalized.
template <typename Scalar>
Eigen::Matrix<Scalar, 2, 2> householder_2d(Scalar a, Scalar b) {
  const Scalar n = std::hypot(a, b);
  if (!(n > Scalar(0))) throw InputError("householder_2d: zero normal");
  a /= n;
  b /= n;
  Eigen::Matrix<Scalar, 2, 2> h;
  h << Scalar(1) - 2 * a * a, -2 * a * b,
       -2 * a * b, Scalar(1) - 2 * b * b;
  return h;
}

template <typename Scalar>
Eigen::Matrix<Scalar, 3, 3> householder_3d(Scalar a, Scalar b, Scalar c) {
  const Scalar n = std::sqrt(a * a + b * b + c * c);
  if (!(n > Scalar(0))) throw InputError("householder_3d: zero normal");
  const Eigen::Matrix<Scalar, 3, 1> v(a / n, b / n, c / n);
  return Eigen::Matrix<Scalar, 3, 3>::Identity() - 2 * v * v.transpose();
}

/// Householder map for a normal of any fixed size.
template <typename Derived>
auto householder(const Eigen::MatrixBase<Derived>& normal) {
  using Scalar = typename Derived::Scalar;
  constexpr int N = Derived::RowsAtCompileTime;
  const Scalar n = normal.norm();
  if (!(n > Scalar(0))) throw InputError("householder: zero normal");
  const Eigen::Matrix<Scalar, N, 1> v = normal / n;
  return Eigen::Matrix<Scalar, N, N>(Eigen::Matrix<Scalar, N, N>::Identity() - 2 * v * v.transpose());
}

// --- lines and planes through the origin -------------------------------------

/// Line through the origin with direction (cos angle, sin angle), angle in [0, pi).
class LineThroughOrigin {
 public:
  explicit LineThroughOrigin(double angle);

  double angle() const { return angle_; }
  Eigen::Vector2d direction() const { return {std::cos(angle_), std::sin(angle_)}; }
  /// Unit normal (-sin, cos); the "left" half-plane is where normal . p > 0.
  Eigen::Vector2d normal() const { return {-std::sin(angle_), std::cos(angle_)}; }

 private:
  double angle_;
};

/// Plane through the origin with a canonical unit normal (first nonzero component positive).
class PlaneThroughOrigin {
 public:
  explicit PlaneThroughOrigin(const Eigen::Vector3d& normal);

  const Eigen::Vector3d& normal() const { return normal_; }

 private:
  Eigen::Vector3d normal_;
};

/// Sign-canonical unit vector: the first component with |c| > 1e-9 is made positive.
Eigen::Vector3d canonical_direction(const Eigen::Vector3d& v);
double reduce_angle_mod_pi(double angle);

// --- transforms ----------------------------------------------------------------

/// Applies a 2x2 or 3x3 linear map. Point masses are unchanged; polygons and
/// meshes keep their orientation convention when det < 0. Rasters become points.
Shape apply_linear(const Shape& shape, const Eigen::MatrixXd& map);
Shape translate(const Shape& shape, const Eigen::VectorXd& offset);

/// Splits into (left, right) halves, left being normal . p > 0.
/// Points within 1e-9 * diameter of the line go to both sides at half weight;
/// polygons are clipped exactly. Throws DegenerateSplit if a side is empty.
std::pair<Shape, Shape> split_by_line(const Shape& shape, const LineThroughOrigin& axis);
/// (left, right) with left on the side normal . p < 0; on-plane points are shared at half weight.
std::pair<PointSet3, PointSet3> split_by_plane(const PointSet3& shape, const PlaneThroughOrigin& plane);

/// Sutherland-Hodgman clip against the half-plane normal . p >= 0.
Eigen::Matrix2Xd clip_half_plane(const Eigen::Matrix2Xd& vertices, const Eigen::Vector2d& normal);

}  // namespace symdet
