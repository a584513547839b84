#include "symdet/directional.hpp"

#include <cmath>
#include <numbers>

#include "symdet/error.hpp"

namespace symdet {

namespace {

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

void check_order(const MomentTensor& mu, int k, int dim) {
  if (mu.dimension() != dim) throw InputError("directional moment: tensor dimension mismatch");
  if (k < 1) throw InputError("directional moment order must be >= 1");
  if (k > mu.max_order())
    throw InputError("directional moment order " + std::to_string(k) + " exceeds tensor order " +
                     std::to_string(mu.max_order()));
}

template <class F>
bool range_within(F&& eval, int count, double tol, double scale) {
  double lo = INFINITY, hi = -INFINITY, sum = 0.0;
  for (int i = 0; i < count; ++i) {
    const double v = eval(i);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    sum += v;
  }
  return hi - lo <= tol * (std::abs(sum / count) + scale);
}

}  // namespace

double DirectionalMoment2D::operator()(double theta) const { return form({theta}); }

double DirectionalMoment3D::operator()(double phi, double theta) const { return form({phi, theta}); }

double DirectionalMoment3D::operator()(const Eigen::Vector3d& d) const {
  std::array<std::array<double, kMaxMomentOrder + 1>, 3> pw;
  for (int i = 0; i < 3; ++i) {
    pw[i][0] = 1.0;
    for (int e = 1; e <= order; ++e) pw[i][e] = pw[i][e - 1] * d(i);
  }
  double sum = 0.0;
  for (const auto& [e, c] : coefficients) sum += c * pw[0][e[0]] * pw[1][e[1]] * pw[2][e[2]];
  return sum;
}

Eigen::Vector3d direction_from_angles(double phi, double theta) {
  return {std::sin(phi) * std::cos(theta), std::sin(phi) * std::sin(theta), std::cos(phi)};
}

Eigen::Vector3d direction_from_chart_b(double phi, double theta) {
  return {std::cos(phi), std::sin(phi) * std::cos(theta), std::sin(phi) * std::sin(theta)};
}

std::pair<double, double> angles_from_direction(const Eigen::Vector3d& d) {
  const Eigen::Vector3d u = d.normalized();
  return {std::acos(std::clamp(u.z(), -1.0, 1.0)), std::atan2(u.y(), u.x())};
}

std::pair<double, double> chart_b_angles_from_direction(const Eigen::Vector3d& d) {
  const Eigen::Vector3d u = d.normalized();
  return {std::acos(std::clamp(u.x(), -1.0, 1.0)), std::atan2(u.z(), u.y())};
}

DirectionalMoment2D build_dm_2d(const MomentTensor& mu, int k) {
  check_order(mu, k, 2);
  DirectionalMoment2D dm;
  dm.order = k;
  double binom = 1.0;
  for (int i = 0; i <= k; ++i) {
    const double c = binom * mu(k - i, i);
    dm.coefficients.push_back(c);
    dm.form.add({i, k - i}, c);
    binom = binom * (k - i) / (i + 1);
  }
  dm.scale = moment_scale(mu, 1, k);
  return dm;
}

DirectionalMoment3D build_dm_3d(const MomentTensor& mu, int k) {
  check_order(mu, k, 3);
  DirectionalMoment3D dm;
  dm.order = k;
  for (const auto& e : exponents_of_order(3, k)) {
    const auto [a, b, c] = e;
    const double coef = factorial(k) / (factorial(a) * factorial(b) * factorial(c)) * mu[e];
    dm.coefficients.emplace_back(e, coef);
    dm.form.add({a + b, c, b, a}, coef);
    dm.form_chart_b.add({b + c, a, c, b}, coef);
  }
  dm.scale = moment_scale(mu, 1, k);
  return dm;
}

double eval_dm(const DirectionalMoment2D& dm, double theta) { return dm(theta); }

double eval_dm(const DirectionalMoment3D& dm, double phi, double theta) { return dm(phi, theta); }

DMGradient dm_gradient_3d(const DirectionalMoment3D& dm) {
  return {dm.form.derivative(0), dm.form.derivative(1)};
}

bool is_constant_dm(const DirectionalMoment2D& dm, double tol) {
  return range_within([&](int i) { return dm(std::numbers::pi * 2 * i / kConstancyGrid2d); }, kConstancyGrid2d,
                      tol, dm.scale);
}

bool is_constant_dm(const DirectionalMoment3D& dm, double tol) {
  return range_within(
      [&](int i) {
        const double phi = std::numbers::pi * (i / kConstancyGridTheta + 0.5) / kConstancyGridPhi;
        const double theta = 2 * std::numbers::pi * (i % kConstancyGridTheta) / kConstancyGridTheta;
        return dm(phi, theta);
      },
      kConstancyGridPhi * kConstancyGridTheta, tol, dm.scale);
}

double projection_sum_check(const Shape& a, const Shape& b, const Eigen::VectorXd& direction) {
  const int dim = dimension(a);
  if (dimension(b) != dim || direction.size() != dim) throw InputError("projection_sum_check: dimension mismatch");
  const Eigen::VectorXd d = direction.normalized();
  double sum = 0.0;
  for (const Shape* s : {&a, &b}) {
    const MomentTensor m = raw_moments(*s, 1);
    sum += d(0) * m(1, 0, 0) + d(1) * m(0, 1, 0) + (dim == 3 ? d(2) * m(0, 0, 1) : 0.0);
  }
  return sum;
}

}  // namespace symdet
