#pragma once

#include <Eigen/Core>

#include <string_view>
#include <vector>

#include "symdet/directional.hpp"

namespace symdet {

enum class CandidateSource { ZeroOfOddDM, CriticalPointOfEvenDM };

std::string_view source_name(CandidateSource source);

struct DirectionCandidate {
  int dimension = 2;
  /// 2D line direction in [0, pi).
  double angle = 0.0;
  /// Unit vector; canonical sign in 3D, (cos, sin, 0) in 2D.
  Eigen::Vector3d direction = Eigen::Vector3d::UnitX();
  CandidateSource source = CandidateSource::CriticalPointOfEvenDM;
  int dm_order = 0;
  /// |M| for zeros, gradient norm for critical points, in units of the DM scale.
  double residual = 0.0;
  /// The Hessian is singular here: the point lies on a critical curve.
  bool degenerate = false;
};

inline constexpr int kRootSamples2d = 4096;
inline constexpr int kSeedGridPhi = 96;
inline constexpr int kSeedGridTheta = 192;
inline constexpr int kNewtonMaxIterations = 100;

/// Zeros of M^k on [0, pi), by sampling, bracketing, bisection and a tangential-zero pass.
/// Throws InputError on a constant form.
std::vector<double> roots_2d(const DirectionalMoment2D& dm, double tol);
/// Zeros of dM^k/dtheta on [0, pi).
std::vector<double> critical_points_2d(const DirectionalMoment2D& dm, double tol);

struct CriticalPointStats {
  int seeds = 0;
  int dropped = 0;
};

/// Critical points of M^k on the sphere: grid seeds, damped Newton with the analytic
/// Hessian, chart switching near the poles, antipodal merging.
std::vector<DirectionCandidate> critical_points_3d(const DirectionalMoment3D& dm, double tol,
                                                   CriticalPointStats* stats = nullptr);

/// Reduced mod pi, merged within angular_tol (across the wrap), sorted ascending.
std::vector<double> dedup_directions(std::vector<double> angles, double angular_tol);
/// Canonical sign, merged within angular_tol (antipodes identified), sorted lexicographically.
std::vector<Eigen::Vector3d> dedup_directions(const std::vector<Eigen::Vector3d>& directions, double angular_tol);

/// Angle between two undirected lines.
double line_angle(const Eigen::Vector3d& a, const Eigen::Vector3d& b);

}  // namespace symdet
