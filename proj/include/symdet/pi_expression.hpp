#pragma once

#include <boost/rational.hpp>

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "symdet/moments.hpp"

namespace symdet {

using Rational = boost::rational<std::int64_t>;

/// Generating-function factors over point indices (1-based):
///   f(i,j) = p_i . p_j,  g(i,j) = det[p_i; p_j]             (2D)
///   F(i,j) = p_i . p_j,  G(i,j,k) = det[p_i; p_j; p_k]      (3D)
enum class FactorKind { Dot2, Det2, Dot3, Det3 };

struct PIFactor {
  FactorKind kind;
  std::array<int, 3> points{};

  int arity() const { return kind == FactorKind::Det3 ? 3 : 2; }
  bool is_determinant() const { return kind == FactorKind::Det2 || kind == FactorKind::Det3; }
  friend bool operator==(const PIFactor&, const PIFactor&) = default;
};

/// A primitive invariant: a product of generating-function factors.
class PIExpression {
 public:
  /// Validates that factors match the dimension and every index 1..point_count is used.
  explicit PIExpression(std::vector<PIFactor> factors);

  int dimension() const { return dimension_; }
  int point_count() const { return point_count_; }
  const std::vector<PIFactor>& factors() const { return factors_; }
  int determinant_count() const;
  /// Canonical text, e.g. `g(1,2)*f(1,2)*f(2,3)*f(3,3)`.
  std::string to_string() const;

  friend bool operator==(const PIExpression&, const PIExpression&) = default;

 private:
  std::vector<PIFactor> factors_;
  int dimension_ = 2;
  int point_count_ = 0;
};

struct PITerm {
  Rational coefficient;
  PIExpression expression;
};

/// Rational linear combination of primitive invariants.
using PICombination = std::vector<PITerm>;

/// Parses `g(1,2)*f(1,2)^2*f(2,3)`. Throws InputError on malformed text.
PIExpression parse_pi(std::string_view text);
/// Parses signed sums of products with optional integer or fractional coefficients,
/// e.g. `f(1,2)^2 - g(1,2)^2` or `3/2*f(1,1)`.
PICombination parse_pi_combination(std::string_view text);
std::string to_string(const PICombination& combination);

/// Polynomial in central moments. Each monomial is a sorted multiset of exponent
/// tuples, one per integrated point.
class MomentPolynomial {
 public:
  using Monomial = std::vector<Exponents>;

  MomentPolynomial() = default;
  explicit MomentPolynomial(int dimension) : dimension_(dimension) {}

  int dimension() const { return dimension_; }
  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  void add(const Monomial& monomial, const Rational& coefficient);
  MomentPolynomial& operator+=(const MomentPolynomial& other);
  MomentPolynomial operator*(const Rational& s) const;

  /// Highest single-moment order used.
  int max_moment_order() const;
  /// Number of moment factors per monomial (mass degree); 0 for the empty polynomial.
  int mass_degree() const;
  /// Total exponent sum per monomial (length degree).
  int length_degree() const;

  double evaluate(const MomentTensor& mu) const;
  /// One line per monomial, e.g. `+1 mu(2,0)` / `-2 mu(1,1)^2`.
  std::string to_string() const;

  friend bool operator==(const MomentPolynomial&, const MomentPolynomial&) = default;

 private:
  int dimension_ = 2;
  std::map<Monomial, Rational> terms_;
};

enum class InvariantClass { Isometric, Reflection };

/// Multiplies the factors out over per-point coordinates and integrates each point
/// independently, x_i^a y_i^b (z_i^c) -> mu_ab(c). Results are cached.
MomentPolynomial expand_pi(const PIExpression& expression);
MomentPolynomial expand_pi(const PICombination& combination);
double evaluate_pi(const PIExpression& expression, const MomentTensor& mu);
double evaluate_pi(const PICombination& combination, const MomentTensor& mu);
/// Direct product of the factors on concrete points (columns of `points`), no integration.
double evaluate_pi_on_points(const PIExpression& expression, const Eigen::MatrixXd& points);

/// Reflection iff the number of g (2D) or G (3D) factors is odd.
InvariantClass classify_pi(const PIExpression& expression);
InvariantClass classify_pi(const PICombination& combination);

}  // namespace symdet
