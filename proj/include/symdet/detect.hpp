#pragma once

#include <Eigen/Core>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "symdet/directional.hpp"
#include "symdet/invariants.hpp"
#include "symdet/moments.hpp"
#include "symdet/shapes.hpp"
#include "symdet/solve.hpp"

namespace symdet {

struct DetectConfig {
  int max_moment_order = kDefaultMomentOrder;
  /// Relative zero tolerance; every comparison is scaled by M00^a * rho^b of the quantity.
  double zero_tol = 1e-7;
  /// Merge distance for candidate and result directions.
  double angular_tol = 1e-6;
  int max_fold = 12;
  /// Half-split reflection-invariant antisymmetry (point sets and polygons).
  bool split_check = true;
  /// Reflect the whole shape and compare all central moments.
  bool moment_check = true;
  bool quick_reject = true;
  bool detect_rotation = true;

  /// Throws InputError when a field is out of range.
  void validate() const;
  /// Profile for sampled, noisy input: loose zero test, coarse direction merging.
  static DetectConfig relaxed();

  friend bool operator==(const DetectConfig&, const DetectConfig&) = default;
};

struct Verification {
  bool pass = false;
  double split_residual = 0.0;
  double moment_residual = 0.0;
  /// Largest normalized deviation of the checks that ran.
  double residual = 0.0;
  std::string reason;
};

/// Tests the line through the centroid at `axis_angle`.
Verification verify_reflection_axis_2d(const Shape& shape, double axis_angle, const DetectConfig& cfg);
/// Tests the plane through the centroid with unit `normal`. Meshes use the moment check only.
Verification verify_reflection_plane_3d(const Shape& shape, const Eigen::Vector3d& normal, const DetectConfig& cfg);

/// A verified mirror: 2D axis (angle, direction) or 3D plane (direction = normal).
struct ReflectionElement {
  double angle = 0.0;
  Eigen::Vector3d direction = Eigen::Vector3d::UnitX();
  double residual = 0.0;
  double split_residual = 0.0;
  double moment_residual = 0.0;
  int dm_order = 0;
  CandidateSource source = CandidateSource::CriticalPointOfEvenDM;

  friend bool operator==(const ReflectionElement&, const ReflectionElement&) = default;
};

struct RotationElement {
  Eigen::Vector3d axis = Eigen::Vector3d::UnitZ();
  int fold = 0;

  friend bool operator==(const RotationElement&, const RotationElement&) = default;
};

struct SymmetryReport {
  int dimension = 2;
  std::string shape_kind;
  double mass = 0.0;
  Eigen::VectorXd centroid;
  std::vector<NamedInvariant> reflection_invariants;
  bool quick_reject = false;
  /// Constancy of M^k for k = 1..max order.
  std::map<int, bool> dm_constant;
  /// Orders whose zeros / critical points produced candidates.
  std::vector<int> candidate_dm_orders;
  int candidate_count = 0;
  /// Verified axes (2D, sorted by angle) or planes (3D, sorted by normal).
  std::vector<ReflectionElement> reflections;
  /// 2D: the out-of-plane axis; 3D: candidate axes with fold >= 2.
  std::vector<RotationElement> rotations;
  /// Some half split had equal isometric invariants (unconfirmed heuristic).
  bool even_rotation_hint = false;
  /// Hint confirmed by an even fold.
  bool even_rotation = false;
  std::map<std::string, double> timings_ms;

  /// Equality ignoring timings.
  friend bool operator==(const SymmetryReport& a, const SymmetryReport& b);
};

/// Lowest-order non-constant DM with the given parity (0 even, 1 odd), or nullopt.
std::optional<int> first_nonconstant_order(const MomentTensor& mu, int parity, double tol);

SymmetryReport detect_reflection_2d(const Shape& shape, const DetectConfig& cfg);
SymmetryReport detect_reflection_3d(const Shape& shape, const DetectConfig& cfg);

/// Largest N <= max_fold such that every non-constant DM is invariant under 2 pi / N
/// at 64 base phases; nullopt when none passes or no DM is informative.
std::optional<int> rotation_fold_2d(const Shape& shape, const DetectConfig& cfg);
std::optional<int> rotation_fold_2d(const MomentTensor& mu, const DetectConfig& cfg);
/// Same test on circles of directions around `axis` at several latitudes.
std::optional<int> rotation_fold_3d(const Shape& shape, const Eigen::Vector3d& axis, const DetectConfig& cfg);
std::optional<int> rotation_fold_3d(const MomentTensor& mu, const Eigen::Vector3d& axis, const DetectConfig& cfg);

/// Full pipeline: reflections, even rotation and folds.
SymmetryReport analyze(const Shape& shape, const DetectConfig& cfg);

/// Largest normalized difference between two central-moment tensors of equal shape.
double moment_deviation(const MomentTensor& a, const MomentTensor& b);

}  // namespace symdet
