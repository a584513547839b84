#include "symdet/invariants.hpp"

#include <cmath>

namespace symdet {

namespace {

void require(const MomentTensor& mu, int dim, int order, const char* what) {
  if (mu.dimension() != dim)
    throw InputError(std::string(what) + " needs a " + std::to_string(dim) + "D moment tensor");
  if (mu.max_order() < order)
    throw InputError(std::string(what) + " needs moments up to order " + std::to_string(order));
}

std::int64_t binomial(int n, int k) {
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

std::array<double, 7> hu_invariants(const MomentTensor& mu) {
  require(mu, 2, 3, "hu_invariants");
  const double u20 = mu(2, 0), u02 = mu(0, 2), u11 = mu(1, 1);
  const double u30 = mu(3, 0), u03 = mu(0, 3), u21 = mu(2, 1), u12 = mu(1, 2);
  const double a = u30 + u12, b = u21 + u03;
  const double p = u30 - 3 * u12, q = 3 * u21 - u03;
  return {
      u20 + u02,
      (u20 - u02) * (u20 - u02) + 4 * u11 * u11,
      p * p + q * q,
      a * a + b * b,
      p * a * (a * a - 3 * b * b) + q * b * (3 * a * a - b * b),
      (u20 - u02) * (a * a - b * b) + 4 * u11 * a * b,
      q * a * (a * a - 3 * b * b) - p * b * (3 * a * a - b * b),
  };
}

std::array<double, 2> reflection_invariants_2d(const MomentTensor& mu) {
  require(mu, 2, 3, "reflection_invariants_2d");
  const double u20 = mu(2, 0), u02 = mu(0, 2), u11 = mu(1, 1);
  const double u30 = mu(3, 0), u03 = mu(0, 3), u21 = mu(2, 1), u12 = mu(1, 2);
  return {
      (u20 - u02) * (u03 * u12 + 2 * u12 * u21 + u21 * u30) + u11 * (u03 * u03 + u12 * u12 - u21 * u21 - u30 * u30),
      (u20 - u02) * (u03 * u30 - u12 * u21) + 2 * u11 * (u21 * (u03 + u21) - u12 * (u12 + u30)),
  };
}

std::array<double, 3> isometric_invariants_3d(const MomentTensor& mu) {
  require(mu, 3, 2, "isometric_invariants_3d");
  const double a = mu(2, 0, 0), b = mu(0, 2, 0), c = mu(0, 0, 2);
  const double xy = mu(1, 1, 0), xz = mu(1, 0, 1), yz = mu(0, 1, 1);
  return {
      a + b + c,
      a * b + a * c + b * c - xy * xy - xz * xz - yz * yz,
      a * b * c + 2 * xy * xz * yz - c * xy * xy - b * xz * xz - a * yz * yz,
  };
}

std::array<double, 2> reflection_invariants_3d(const MomentTensor& mu) {
  require(mu, 3, 4, "reflection_invariants_3d");
  return {evaluate_pi(reflection_core_S1(), mu), evaluate_pi(reflection_core_S2(), mu)};
}

std::vector<NamedInvariant> reflection_invariant_set(const MomentTensor& mu) {
  std::vector<NamedInvariant> out;
  if (mu.dimension() == 2) {
    if (mu.max_order() < 3) return out;
    const auto r = reflection_invariants_2d(mu);
    const double s = moment_scale(mu, kReflection2dDegree.mass, kReflection2dDegree.length);
    out.push_back({"r1", r[0], s});
    out.push_back({"r2", r[1], s});
    out.push_back({"I7", hu_invariants(mu)[6], moment_scale(mu, kHuDegrees[6].mass, kHuDegrees[6].length)});
    for (int n = 2; n + 2 <= mu.max_order() && n <= 4; ++n) {
      const MomentPolynomial p = expand_pi(chirality_core(n));
      out.push_back({"chi" + std::to_string(n), p.evaluate(mu), moment_scale(mu, p.mass_degree(), p.length_degree())});
    }
  } else {
    if (mu.max_order() < 4) return out;
    const auto s = reflection_invariants_3d(mu);
    const double sc = moment_scale(mu, kReflection3dDegree.mass, kReflection3dDegree.length);
    out.push_back({"S1", s[0], sc});
    out.push_back({"S2", s[1], sc});
  }
  return out;
}

bool quick_reject_symmetry(std::span<const NamedInvariant> values, double tol) {
  for (const auto& v : values)
    if (std::abs(v.value) > tol * v.scale) return true;
  return false;
}

const std::vector<GeneratingCore>& hu_generating_cores() {
  static const std::vector<GeneratingCore> cores{
      {"I1", parse_pi_combination("f(1,1)"), "mu20 + mu02"},
      {"I2", parse_pi_combination("f(1,2)^2 - g(1,2)^2"), "(mu20 - mu02)^2 + 4 mu11^2"},
      {"I3", parse_pi_combination("f(1,2)^3 - 3*g(1,2)^2*f(1,2)"), "(mu30 - 3mu12)^2 + (3mu21 - mu03)^2"},
      {"I4", parse_pi_combination("f(1,2)*f(1,1)*f(2,2)"), "(mu30 + mu12)^2 + (mu21 + mu03)^2"},
      {"I5",
       parse_pi_combination("f(2,2)*f(3,3)*f(4,4)*f(2,1)*f(3,1)*f(4,1) - f(2,2)*f(3,3)*f(4,4)*f(2,1)*g(3,1)*g(4,1)"
                            " - f(2,2)*f(3,3)*f(4,4)*g(2,1)*g(3,1)*f(4,1) - f(2,2)*f(3,3)*f(4,4)*g(2,1)*f(3,1)*g(4,1)"),
       "Hu I5"},
      {"I6", parse_pi_combination("f(2,2)*f(3,3)*f(1,2)*f(1,3) - f(2,2)*f(3,3)*g(1,2)*g(1,3)"), "Hu I6"},
      {"I7",
       parse_pi_combination("f(2,2)*f(3,3)*f(4,4)*g(2,1)*f(3,1)*f(4,1) - f(2,2)*f(3,3)*f(4,4)*g(2,1)*g(3,1)*g(4,1)"
                            " + f(2,2)*f(3,3)*f(4,4)*f(2,1)*g(3,1)*f(4,1) + f(2,2)*f(3,3)*f(4,4)*f(2,1)*f(3,1)*g(4,1)"),
       "Hu I7"},
  };
  return cores;
}

const PICombination& hu_i2_printed_core() {
  static const PICombination c = parse_pi_combination("f(1,2)^2 - 2*g(1,2)^2");
  return c;
}

const PIExpression& reflection_core_s1() {
  static const PIExpression e = parse_pi("g(1,2)*f(1,2)*f(2,3)*f(3,3)");
  return e;
}

const PIExpression& reflection_core_s2() {
  static const PIExpression e = parse_pi("f(1,2)*g(1,3)*g(2,3)*g(2,3)");
  return e;
}

const PIExpression& reflection_core_S1() {
  static const PIExpression e = parse_pi("G(1,2,3)*F(1,1)*F(1,3)*F(2,3)");
  return e;
}

const PIExpression& reflection_core_S2() {
  static const PIExpression e = parse_pi("G(1,2,3)*F(1,1)*F(1,2)*F(3,3)");
  return e;
}

PICombination chirality_core(int n) {
  if (n < 1) throw InputError("chirality_core needs n >= 1");
  // Im[(f + i g)^n] = sum over odd j of C(n,j) (-1)^((j-1)/2) f^(n-j) g^j
  PICombination out;
  for (int j = 1; j <= n; j += 2) {
    std::vector<PIFactor> factors;
    for (int i = 0; i < n - j; ++i) factors.push_back({FactorKind::Dot2, {1, 2, 0}});
    for (int i = 0; i < j; ++i) factors.push_back({FactorKind::Det2, {1, 2, 0}});
    factors.push_back({FactorKind::Dot2, {2, 2, 0}});
    const std::int64_t sign = ((j - 1) / 2) % 2 == 0 ? 1 : -1;
    out.push_back({Rational(sign * binomial(n, j)), PIExpression(std::move(factors))});
  }
  return out;
}

}  // namespace symdet
