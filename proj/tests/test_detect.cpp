#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "symdet/detect.hpp"
#include "symdet/fixtures.hpp"

using namespace symdet;
using std::numbers::pi;

namespace {

// Largest |mu_e(a) - mu_e(b)| / (M00 rho^|e|) with rho from a.
double normalized_gap(const MomentTensor& a, const MomentTensor& b) {
  const double rho = std::sqrt((a.dimension() == 2 ? a(2, 0) + a(0, 2) : a(2, 0, 0) + a(0, 2, 0) + a(0, 0, 2)) / a.mass());
  double worst = 0;
  for (const auto& e : a.exponents())
    worst = std::max(worst, std::abs(a[e] - b[e]) / (a.mass() * std::pow(rho, e[0] + e[1] + e[2])));
  return worst;
}

Eigen::Vector2d axis_normal(double angle) { return {-std::sin(angle), std::cos(angle)}; }

double angle_gap(double a, double b) {
  const double d = std::fmod(std::abs(a - b), pi);
  return std::min(d, pi - d);
}

PointSet2 scalene_cloud(std::uint64_t seed, int n = 12) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Eigen::Matrix2Xd p(2, n);
  for (int i = 0; i < n; ++i) p.col(i) = Eigen::Vector2d(g(rng), 0.5 * g(rng) + 0.1 * i);
  return make_points2(p, {});
}

}  // namespace

TEST_CASE("config validation") {
  DetectConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.max_moment_order = 1;
  CHECK_THROWS_AS(cfg.validate(), InputError);
  cfg = DetectConfig{};
  cfg.zero_tol = 0;
  CHECK_THROWS_AS(cfg.validate(), InputError);
  cfg = DetectConfig{};
  cfg.max_fold = 1;
  CHECK_THROWS_AS(cfg.validate(), InputError);
  const auto r = DetectConfig::relaxed();
  CHECK(r.zero_tol > DetectConfig{}.zero_tol);
  CHECK(r.angular_tol > DetectConfig{}.angular_tol);
}

TEST_CASE("axis verification examples") {
  const DetectConfig cfg;
  const Shape iso = fixtures::isosceles_points();
  CHECK(verify_reflection_axis_2d(iso, pi / 2, cfg).pass);
  const auto bad = verify_reflection_axis_2d(iso, 0.0, cfg);
  CHECK_FALSE(bad.pass);
  CHECK(bad.moment_residual > 1e-3);
  for (double a : {0.0, pi / 4, pi / 2, 3 * pi / 4}) CHECK(verify_reflection_axis_2d(fixtures::unit_square(), a, cfg).pass);
  CHECK_FALSE(verify_reflection_axis_2d(fixtures::unit_square(), 0.3, cfg).pass);
}

TEST_CASE("moment check rejects without the split check") {
  DetectConfig cfg;
  cfg.split_check = false;
  const auto v = verify_reflection_axis_2d(fixtures::unit_square(), 0.3, cfg);
  CHECK_FALSE(v.pass);
  CHECK(v.split_residual == 0.0);
}

TEST_CASE("plane verification examples") {
  const DetectConfig cfg;
  const auto tp = verify_reflection_plane_3d(fixtures::tetra_points(), Eigen::Vector3d::UnitY(), cfg);
  CHECK(tp.pass);
  CHECK(tp.split_residual <= cfg.zero_tol);
  CHECK(verify_reflection_plane_3d(fixtures::cube(), Eigen::Vector3d(1, 1, 0).normalized(), cfg).pass);
  const auto bad = verify_reflection_plane_3d(fixtures::cube(), Eigen::Vector3d(1, 0.3, 0).normalized(), cfg);
  CHECK_FALSE(bad.pass);
  CHECK(bad.split_residual == 0.0);
}

TEST_CASE("2D detection examples") {
  const DetectConfig cfg;
  const auto tri = analyze(fixtures::equilateral_triangle(), cfg);
  REQUIRE(tri.reflections.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(tri.reflections[i].dm_order == 3);
    CHECK(angle_gap(tri.reflections[i].angle, pi / 6 + i * pi / 3) < 1e-6);
  }
  REQUIRE(tri.rotations.size() == 1);
  CHECK(tri.rotations[0].fold == 3);
  CHECK_FALSE(tri.quick_reject);

  const auto sq = analyze(fixtures::unit_square(), cfg);
  REQUIRE(sq.reflections.size() == 4);
  for (const auto& r : sq.reflections) CHECK(r.dm_order == 4);
  CHECK(sq.dm_constant.at(2));
  CHECK(sq.dm_constant.at(3));
  CHECK_FALSE(sq.dm_constant.at(4));
  REQUIRE(sq.rotations.size() == 1);
  CHECK(sq.rotations[0].fold == 4);
  CHECK(sq.even_rotation);

  const auto weyl = analyze(fixtures::weyl_polygon(), cfg);
  CHECK(weyl.quick_reject);
  CHECK(weyl.reflections.empty());
  REQUIRE(weyl.rotations.size() == 1);
  CHECK(weyl.rotations[0].fold == 3);
  CHECK_FALSE(weyl.even_rotation);

  const auto cloud = analyze(scalene_cloud(4), cfg);
  CHECK(cloud.quick_reject);
  CHECK(cloud.reflections.empty());
  CHECK(cloud.rotations.empty());
}

TEST_CASE("folds") {
  const DetectConfig cfg;
  CHECK(rotation_fold_2d(fixtures::unit_square(), cfg) == 4);
  CHECK(rotation_fold_2d(fixtures::weyl_polygon(), cfg) == 3);
  CHECK_FALSE(rotation_fold_2d(fixtures::triangle_aob(), cfg).has_value());
  CHECK(rotation_fold_3d(fixtures::cube(), Eigen::Vector3d::UnitZ(), cfg) == 4);
  CHECK(rotation_fold_3d(fixtures::cube(), Eigen::Vector3d(1, 1, 1).normalized(), cfg) == 3);
  CHECK(rotation_fold_3d(fixtures::tetrahedron(), Eigen::Vector3d(1, 1, 1).normalized(), cfg) == 3);
  CHECK_FALSE(rotation_fold_3d(fixtures::cube(), Eigen::Vector3d(1, 0.2, 0).normalized(), cfg).has_value());
  CHECK_THROWS_AS(rotation_fold_3d(fixtures::cube(), Eigen::Vector3d::Zero(), cfg), InputError);
}

TEST_CASE("3D detection examples") {
  const DetectConfig cfg;
  const auto tet = analyze(fixtures::tetrahedron(), cfg);
  CHECK(tet.reflections.size() == 6);
  CHECK(tet.candidate_dm_orders == std::vector<int>{4});
  CHECK(tet.dm_constant.at(2));
  std::vector<Eigen::Vector3d> normals;
  for (const auto& r : tet.reflections) normals.push_back(r.direction);
  CHECK(oracle::same_line_sets(normals, oracle::platonic_mirror_normals("tetrahedron"), 1e-5));

  const auto ico = analyze(fixtures::icosahedron(), cfg);
  CHECK(ico.reflections.size() == 15);
  bool five = false;
  for (const auto& r : ico.rotations) five |= r.fold == 5;
  CHECK(five);

  const auto prism = analyze(fixtures::weyl_prism(), cfg);
  REQUIRE(prism.reflections.size() == 1);
  CHECK(oracle::line_angle(prism.reflections[0].direction, Eigen::Vector3d::UnitZ()) < 1e-6);
}

TEST_CASE("soundness: reported mirrors and folds preserve moments") {
  const DetectConfig cfg;
  for (const std::string name : {"equilateral-triangle", "square", "isosceles-points", "tetrahedron", "cube", "tetra-points"}) {
    CAPTURE(name);
    const Shape s = fixtures::by_name(name);
    const Shape c = translate(s, -centroid(s));
    const auto base = central_moments(c, cfg.max_moment_order);
    const auto report = analyze(s, cfg);
    CHECK_FALSE(report.reflections.empty());
    for (const auto& r : report.reflections) {
      const Eigen::MatrixXd h = report.dimension == 2 ? Eigen::MatrixXd(householder(axis_normal(r.angle)))
                                                      : Eigen::MatrixXd(householder(r.direction));
      CHECK(normalized_gap(base, central_moments(apply_linear(c, h), cfg.max_moment_order)) <= 10 * cfg.zero_tol);
    }
    for (const auto& rot : report.rotations) {
      Eigen::MatrixXd map;
      if (report.dimension == 2) {
        map = oracle::rotation2(2 * pi / rot.fold);
      } else {
        map = Eigen::AngleAxisd(2 * pi / rot.fold, rot.axis).toRotationMatrix();
      }
      CHECK(normalized_gap(base, central_moments(apply_linear(c, map), cfg.max_moment_order)) <= 10 * cfg.zero_tol);
    }
  }
}

TEST_CASE("half-invariant antisymmetry on verified axes") {
  const DetectConfig cfg;
  for (const std::string name : {"equilateral-triangle", "square", "isosceles-points"}) {
    CAPTURE(name);
    const Shape s = fixtures::by_name(name);
    const Shape c = translate(s, -centroid(s));
    for (const auto& r : analyze(s, cfg).reflections) {
      const auto [l, rr] = split_by_line(c, LineThroughOrigin(r.angle));
      const auto ml = central_moments(l, 3), mr = central_moments(rr, 3);
      const auto a = oracle::printed_reflection_pair(ml), b = oracle::printed_reflection_pair(mr);
      const double scale = std::pow(ml.mass(), 3) * std::pow(std::sqrt((ml(2, 0) + ml(0, 2)) / ml.mass()), 8);
      CHECK(std::abs(a[0] + b[0]) <= cfg.zero_tol * scale);
      CHECK(std::abs(a[1] + b[1]) <= cfg.zero_tol * scale);
    }
  }
  const Shape tp = fixtures::tetra_points();
  for (const auto& r : analyze(tp, cfg).reflections) CHECK(r.split_residual <= cfg.zero_tol);
}

TEST_CASE("rotation equivariance") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0, 2 * pi);
  const DetectConfig cfg;
  for (const std::string name : {"equilateral-triangle", "square", "isosceles-points"}) {
    CAPTURE(name);
    const Shape s = fixtures::by_name(name);
    const auto base = analyze(s, cfg);
    for (int i = 0; i < 5; ++i) {
      const double t = u(rng);
      const auto rotated = analyze(apply_linear(s, oracle::rotation2(t)), cfg);
      REQUIRE(rotated.reflections.size() == base.reflections.size());
      for (const auto& r : base.reflections) {
        bool hit = false;
        for (const auto& q : rotated.reflections) hit |= angle_gap(q.angle, r.angle + t) <= cfg.angular_tol;
        CHECK(hit);
      }
      CHECK(rotated.rotations == base.rotations);
    }
  }
  const Shape tet = fixtures::tetrahedron();
  const auto base = analyze(tet, cfg);
  for (int i = 0; i < 2; ++i) {
    const Eigen::Matrix3d r = oracle::random_rotation(rng);
    const auto rotated = analyze(apply_linear(tet, r), cfg);
    std::vector<Eigen::Vector3d> expected, got;
    for (const auto& e : base.reflections) expected.push_back(r * e.direction);
    for (const auto& e : rotated.reflections) got.push_back(e.direction);
    CHECK(oracle::same_line_sets(got, expected, 1e-5));
  }
}

TEST_CASE("quick reject agrees with a brute-force axis scan") {
  DetectConfig scan;
  scan.quick_reject = false;
  std::vector<Shape> shapes{fixtures::weyl_polygon(), fixtures::triangle_aob()};
  std::mt19937_64 rng(2);
  for (int i = 0; i < 5; ++i) shapes.push_back(make_polygon(oracle::random_convex_polygon(rng, 7)));
  for (int i = 0; i < 3; ++i) shapes.push_back(scalene_cloud(100 + i));
  int fired = 0;
  for (const auto& s : shapes) {
    const auto report = analyze(s, DetectConfig{});
    if (!report.quick_reject) continue;
    ++fired;
    for (int deg = 0; deg < 180; ++deg) CHECK_FALSE(verify_reflection_axis_2d(s, deg * pi / 180, scan).pass);
  }
  CHECK(fired >= 8);
}

TEST_CASE("relaxed profile on a noisy square") {
  const auto cloud = fixtures::noisy_square_cloud(100, 0.01, 1);
  const auto report = analyze(cloud, DetectConfig::relaxed());
  REQUIRE(report.reflections.size() == 4);
  for (int i = 0; i < 4; ++i) {
    double best = pi;
    for (const auto& r : report.reflections) best = std::min(best, angle_gap(r.angle, i * pi / 4));
    CHECK(best < 0.02);
  }
}

TEST_CASE("first non-constant orders") {
  const DetectConfig cfg;
  const auto sq = central_moments(fixtures::unit_square(), 6);
  CHECK(first_nonconstant_order(sq, 0, cfg.zero_tol) == 4);
  CHECK_FALSE(first_nonconstant_order(sq, 1, cfg.zero_tol).has_value());
  const auto tri = central_moments(fixtures::equilateral_triangle(), 6);
  CHECK(first_nonconstant_order(tri, 1, cfg.zero_tol) == 3);
  const auto ico = central_moments(fixtures::icosahedron(), 6);
  CHECK(first_nonconstant_order(ico, 0, cfg.zero_tol) == 6);
}

TEST_CASE("report equality ignores timings") {
  const auto a = analyze(fixtures::unit_square(), DetectConfig{});
  auto b = a;
  b.timings_ms["moments"] += 5;
  CHECK(a == b);
  b.reflections.pop_back();
  CHECK_FALSE(a == b);
  CHECK(a.timings_ms.contains("verification"));
}
