#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "symdet/moments.hpp"
#include "symdet/pi_expression.hpp"

namespace symdet {

/// Hu's seven invariants I1..I7 on a 2D central-moment tensor (order >= 3).
/// I1..I6 are isometric; I7 changes sign under reflection.
std::array<double, 7> hu_invariants(const MomentTensor& mu);

/// The two order-3 reflection invariants (r1, r2); both vanish on mirror-symmetric shapes.
std::array<double, 2> reflection_invariants_2d(const MomentTensor& mu);

/// Trace, second principal invariant and determinant of the 3D second-moment tensor.
std::array<double, 3> isometric_invariants_3d(const MomentTensor& mu);

/// S1 = G(1,2,3)F(1,1)F(1,3)F(2,3), S2 = G(1,2,3)F(1,1)F(1,2)F(3,3), expanded
/// through the PI engine. Needs order >= 4 (point 1 carries degree 4).
std::array<double, 2> reflection_invariants_3d(const MomentTensor& mu);

/// Mass/length degrees of each closed-form invariant, for dimensional scaling.
struct InvariantDegree {
  int mass;
  int length;
};
inline constexpr std::array<InvariantDegree, 7> kHuDegrees{{{1, 2}, {2, 4}, {2, 6}, {2, 6}, {4, 12}, {3, 10}, {4, 12}}};
inline constexpr InvariantDegree kReflection2dDegree{3, 8};
inline constexpr std::array<InvariantDegree, 3> kIsometric3dDegrees{{{1, 2}, {2, 4}, {3, 6}}};
inline constexpr InvariantDegree kReflection3dDegree{3, 9};

/// A reflection invariant value with the dimensional scale used for zero tests.
struct NamedInvariant {
  std::string name;
  double value = 0.0;
  double scale = 1.0;

  double normalized() const { return std::abs(value) / scale; }
  friend bool operator==(const NamedInvariant&, const NamedInvariant&) = default;
};

/// Reflection invariants available at the tensor's order.
/// 2D: r1, r2, I7 and the chirality invariants chi2..chi4; 3D: S1, S2.
std::vector<NamedInvariant> reflection_invariant_set(const MomentTensor& mu);

/// True (reject: no reflection symmetry) when some reflection invariant is
/// distinguishable from zero, i.e. |value| > tol * scale.
bool quick_reject_symmetry(std::span<const NamedInvariant> values, double tol);

// --- generating-function catalogs ---------------------------------------------

struct GeneratingCore {
  std::string name;
  PICombination core;
  /// Closed form this core integrates to (up to a constant), or empty.
  std::string closed_form;
};

/// Generating cores of Hu's seven invariants. I2 uses f(1,2)^2 - g(1,2)^2, which
/// integrates exactly to (mu20 - mu02)^2 + 4 mu11^2.
const std::vector<GeneratingCore>& hu_generating_cores();
/// The I2 core in its commonly printed form f(1,2)^2 - 2 g(1,2)^2; this is an
/// invariant but not proportional to I2.
const PICombination& hu_i2_printed_core();

/// s1 = g(1,2)f(1,2)f(2,3)f(3,3) and s2 = f(1,2)g(1,3)g(2,3)g(2,3); these expand to r1 and r2.
const PIExpression& reflection_core_s1();
const PIExpression& reflection_core_s2();
const PIExpression& reflection_core_S1();
const PIExpression& reflection_core_S2();

/// chi_N = Im[(f(1,2) + i g(1,2))^N] f(2,2): integrates to Im(c_{N,0} c_{1,N+1}) in
/// complex moments c_pq = int z^p conj(z)^q. Reflection-odd, and unlike r1/r2/I7 it
/// survives N-fold rotational symmetry. Needs order N + 2.
PICombination chirality_core(int n);

}  // namespace symdet
