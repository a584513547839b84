#pragma once

#include <Eigen/Core>

#include <string>
#include <utility>
#include <vector>

#include "symdet/moments.hpp"
#include "symdet/trig_form.hpp"

namespace symdet {

/// M^k(theta) = sum_i C(k,i) mu_{k-i,i} cos^{k-i}(theta) sin^i(theta).
struct DirectionalMoment2D {
  int order = 0;
  std::vector<double> coefficients;  // c_i, i = 0..k
  TrigForm1 form;
  /// M00 * rho^k, the dimensional scale of the form's values.
  double scale = 1.0;

  double operator()(double theta) const;
  std::string to_string() const { return form.to_string({"t"}); }
};

/// M^k(phi, theta) = sum c_abc (sin phi cos theta)^a (sin phi sin theta)^b (cos phi)^c,
/// c_abc = k!/(a! b! c!) mu_abc.
struct DirectionalMoment3D {
  int order = 0;
  std::vector<std::pair<Exponents, double>> coefficients;
  TrigForm2 form;
  /// Same polynomial in the pole-free chart d = (cos phi, sin phi cos theta, sin phi sin theta).
  TrigForm2 form_chart_b;
  double scale = 1.0;

  double operator()(double phi, double theta) const;
  /// Direct evaluation along a unit vector.
  double operator()(const Eigen::Vector3d& direction) const;
  std::string to_string() const { return form.to_string({"phi", "theta"}); }
};

Eigen::Vector3d direction_from_angles(double phi, double theta);
Eigen::Vector3d direction_from_chart_b(double phi, double theta);
/// Inverse of direction_from_angles: phi in [0, pi], theta in (-pi, pi].
std::pair<double, double> angles_from_direction(const Eigen::Vector3d& d);
std::pair<double, double> chart_b_angles_from_direction(const Eigen::Vector3d& d);

DirectionalMoment2D build_dm_2d(const MomentTensor& mu, int k);
DirectionalMoment3D build_dm_3d(const MomentTensor& mu, int k);

double eval_dm(const DirectionalMoment2D& dm, double theta);
double eval_dm(const DirectionalMoment3D& dm, double phi, double theta);

struct DMGradient {
  TrigForm2 d_phi;
  TrigForm2 d_theta;
};
DMGradient dm_gradient_3d(const DirectionalMoment3D& dm);

inline constexpr int kConstancyGrid2d = 1024;
inline constexpr int kConstancyGridPhi = 64;
inline constexpr int kConstancyGridTheta = 128;

/// max - min over the sample grid <= tol * (|mean| + scale).
bool is_constant_dm(const DirectionalMoment2D& dm, double tol);
bool is_constant_dm(const DirectionalMoment3D& dm, double tol);

/// First directional moment of the union of two shapes along `direction`, in their common frame.
double projection_sum_check(const Shape& a, const Shape& b, const Eigen::VectorXd& direction);

}  // namespace symdet
