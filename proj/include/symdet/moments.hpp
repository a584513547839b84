#pragma once

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <vector>

#include "symdet/shapes.hpp"

namespace symdet {

enum class MomentFrame { Origin, Centroid };

inline constexpr int kMaxMomentOrder = 12;
inline constexpr int kDefaultMomentOrder = 6;

/// Exponent tuple (m, n) or (m, n, k); unused trailing entries are zero.
using Exponents = std::array<int, 3>;

/// Geometric moments M or central moments mu up to a total order, stored densely.
class MomentTensor {
 public:
  MomentTensor() = default;
  MomentTensor(int dimension, int max_order, MomentFrame about);

  int dimension() const { return dimension_; }
  int max_order() const { return max_order_; }
  MomentFrame about() const { return about_; }

  double operator()(int m, int n) const { return values_[index(m, n, 0)]; }
  double operator()(int m, int n, int k) const { return values_[index(m, n, k)]; }
  double& operator()(int m, int n) { return values_[index(m, n, 0)]; }
  double& operator()(int m, int n, int k) { return values_[index(m, n, k)]; }
  double operator[](const Exponents& e) const { return values_[index(e[0], e[1], e[2])]; }
  double& operator[](const Exponents& e) { return values_[index(e[0], e[1], e[2])]; }

  double mass() const { return values_.at(0); }

  /// All exponent tuples with total order <= max_order, graded then reverse-lexicographic
  /// ((2,0), (1,1), (0,2), ...).
  std::vector<Exponents> exponents() const;

  friend bool operator==(const MomentTensor&, const MomentTensor&) = default;

 private:
  std::size_t index(int m, int n, int k) const;

  int dimension_ = 2;
  int max_order_ = 0;
  MomentFrame about_ = MomentFrame::Origin;
  std::vector<double> values_;
};

/// Exponent tuples of exactly `order` in `dimension` variables, in MomentTensor::exponents order.
std::vector<Exponents> exponents_of_order(int dimension, int order);

/// Exact moments about the origin. Polygons and meshes are integrated as signed
/// simplices fanned from the origin; rasters are summed at cell centers.
MomentTensor raw_moments(const Shape& shape, int max_order);
Eigen::VectorXd centroid(const Shape& shape);
/// Raw moments of the centroid-translated shape.
MomentTensor central_moments(const Shape& shape, int max_order);

/// Moments of the image of the shape under x -> A x, computed from the tensor alone.
MomentTensor transform_moments(const MomentTensor& mu, const Eigen::MatrixXd& map);

/// sqrt(trace of second-order tensor / mass); the length scale used to normalize comparisons.
double gyration_radius(const MomentTensor& mu);

/// mass^mass_degree * gyration_radius^length_degree, floored at the smallest normal double.
double moment_scale(const MomentTensor& mu, int mass_degree, int length_degree);

/// Integral of x^m y^n over the triangle (0, a, b), signed by orientation.
double triangle_monomial_integral(const Eigen::Vector2d& a, const Eigen::Vector2d& b, int m, int n);
/// Integral of x^m y^n z^k over the tetrahedron (0, a, b, c), signed by orientation.
double tetrahedron_monomial_integral(const Eigen::Vector3d& a, const Eigen::Vector3d& b,
                                     const Eigen::Vector3d& c, int m, int n, int k);

struct MonteCarloMoments {
  MomentTensor estimate;
  MomentTensor standard_error;
  std::int64_t samples = 0;
};

/// Rejection-sampled moment estimate for polygons and meshes; deterministic in `seed`.
MonteCarloMoments monte_carlo_moments(const Shape& shape, int max_order, std::int64_t sample_count,
                                      std::uint64_t seed);

bool point_in_polygon(const Polygon& polygon, const Eigen::Vector2d& p);
bool point_in_mesh(const TriMesh& mesh, const Eigen::Vector3d& p);

}  // namespace symdet
