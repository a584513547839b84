#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "symdet/fixtures.hpp"
#include "symdet/moments.hpp"
#include "symdet/shapes.hpp"

using namespace symdet;
using doctest::Approx;

TEST_CASE("householder_2d values") {
  const auto hy = householder_2d(0.0, 1.0);
  CHECK(hy.isApprox(Eigen::Vector2d(1, -1).asDiagonal().toDenseMatrix()));
  const auto hx = householder_2d(1.0, 0.0);
  CHECK(hx.isApprox(Eigen::Vector2d(-1, 1).asDiagonal().toDenseMatrix()));
  const double s = 1 / std::sqrt(2.0);
  const auto hd = householder_2d(s, s);
  Eigen::Matrix2d expected;
  expected << 0, -1, -1, 0;
  CHECK((hd - expected).norm() < 1e-15);
  CHECK((hd * Eigen::Vector2d(1, 0) - Eigen::Vector2d(0, -1)).norm() < 1e-15);
  CHECK_THROWS_AS(householder_2d(0.0, 0.0), InputError);
}

TEST_CASE("householder_3d values") {
  CHECK(householder_3d(0.0, 1.0, 0.0).isApprox(Eigen::Vector3d(1, -1, 1).asDiagonal().toDenseMatrix()));
  CHECK(householder_3d(0.0, 0.0, 1.0).isApprox(Eigen::Vector3d(1, 1, -1).asDiagonal().toDenseMatrix()));
  const double s = 1 / std::sqrt(3.0);
  const auto h = householder_3d(s, s, s);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(h(i, j) == Approx(i == j ? 1.0 / 3 : -2.0 / 3).epsilon(1e-14));
  CHECK(h.determinant() == Approx(-1).epsilon(1e-12));
  CHECK_THROWS_AS(householder_3d(0.0, 0.0, 0.0), InputError);
}

TEST_CASE("householder maps are involutions with determinant -1") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  for (int i = 0; i < 1000; ++i) {
    const auto h2 = householder_2d(g(rng), g(rng));
    const Eigen::Vector3d n = oracle::random_unit(rng);
    const auto h3 = householder_3d(n.x(), n.y(), n.z());
    CHECK(std::abs(h2.determinant() + 1) < 1e-12);
    CHECK(std::abs(h3.determinant() + 1) < 1e-12);
    CHECK((h2 * h2 - Eigen::Matrix2d::Identity()).norm() < 1e-9);
    CHECK((h3 * h3 - Eigen::Matrix3d::Identity()).norm() < 1e-9);
    CHECK((householder(n) - h3).norm() < 1e-15);
  }
}

TEST_CASE("apply_linear maps B to B'") {
  Eigen::Matrix2Xd p(2, 2);
  p << 0, 3 * std::sqrt(3.0), 3, 0;
  const Shape s = make_points2(p, {});
  const auto out = std::get<PointSet2>(apply_linear(s, householder_2d(1.0, 0.0)));
  CHECK(out.points(0, 0) == Approx(0.0));
  CHECK(out.points(1, 0) == Approx(3.0));
  CHECK(out.points(0, 1) == Approx(-3 * std::sqrt(3.0)));
  CHECK(out.points(1, 1) == Approx(0.0).epsilon(1e-15));
  CHECK(out.weights.sum() == 2.0);
}

TEST_CASE("apply_linear identity and mesh orientation repair") {
  const Shape sq = fixtures::unit_square();
  const auto same = std::get<Polygon>(apply_linear(sq, Eigen::Matrix2d::Identity()));
  CHECK(same.vertices == std::get<Polygon>(sq).vertices);

  const TriMesh cube = fixtures::cube();
  const auto mirrored = std::get<TriMesh>(apply_linear(cube, householder_3d(0.0, 0.0, 1.0)));
  CHECK(signed_volume(mirrored) == Approx(signed_volume(cube)).epsilon(1e-12));
  CHECK(signed_volume(mirrored) > 0);
  CHECK(is_closed_oriented(mirrored.faces, mirrored.vertices.cols()));

  CHECK_THROWS_AS(apply_linear(sq, Eigen::Matrix2d::Zero()), InputError);
  CHECK_THROWS_AS(apply_linear(sq, Eigen::Matrix3d::Identity()), InputError);
}

TEST_CASE("translate recenters shapes") {
  const auto sq = std::get<Polygon>(translate(fixtures::unit_square(), Eigen::Vector2d(-0.5, -0.5)));
  CHECK(sq.vertices.rowwise().sum().norm() < 1e-15);

  const Shape pts = make_points2((Eigen::Matrix2Xd(2, 3) << 0, 3 * std::sqrt(3.0), 0, 3, 0, 0).finished(), {});
  const Shape moved = translate(pts, -centroid(pts));
  CHECK(centroid(moved).norm() < 1e-15);

  const Shape weyl = translate(fixtures::weyl_polygon(), Eigen::Vector2d(-0.5, std::sqrt(3.0) / 6));
  CHECK(centroid(weyl).norm() < 1e-12);
}

TEST_CASE("split_by_line examples") {
  SUBCASE("B and B' by the vertical axis") {
    Eigen::Matrix2Xd p(2, 2);
    p << 3 * std::sqrt(3.0), -3 * std::sqrt(3.0), 0, 0;
    const auto [left, right] = split_by_line(make_points2(p, {}), LineThroughOrigin(std::numbers::pi / 2));
    const auto& l = std::get<PointSet2>(left);
    const auto& r = std::get<PointSet2>(right);
    REQUIRE(l.size() == 1);
    REQUIRE(r.size() == 1);
    CHECK(l.points(0, 0) < 0);
    CHECK(r.points(0, 0) > 0);
  }
  SUBCASE("centered square into two rectangles") {
    const Shape sq = translate(fixtures::unit_square(), Eigen::Vector2d(-0.5, -0.5));
    const auto [left, right] = split_by_line(sq, LineThroughOrigin(std::numbers::pi / 2));
    const auto& l = std::get<Polygon>(left);
    const auto& r = std::get<Polygon>(right);
    CHECK(signed_area(l.vertices) == Approx(0.5));
    CHECK(signed_area(r.vertices) == Approx(0.5));
    CHECK(l.vertices.row(0).maxCoeff() <= 1e-15);
    CHECK(r.vertices.row(0).minCoeff() >= -1e-15);
  }
  SUBCASE("point on the line is shared at half weight") {
    Eigen::Matrix2Xd p(2, 3);
    p << 0, -1, 1, 0, 0, 0;
    const auto [left, right] = split_by_line(make_points2(p, {}), LineThroughOrigin(std::numbers::pi / 2));
    const auto& l = std::get<PointSet2>(left);
    const auto& r = std::get<PointSet2>(right);
    CHECK(l.total_mass() == Approx(1.5));
    CHECK(r.total_mass() == Approx(1.5));
  }
  SUBCASE("one-sided shape throws") {
    Eigen::Matrix2Xd p(2, 2);
    p << 1, 2, 0, 1;
    CHECK_THROWS_AS(split_by_line(make_points2(p, {}), LineThroughOrigin(std::numbers::pi / 2)), DegenerateSplit);
  }
}

TEST_CASE("split_by_plane examples") {
  SUBCASE("tetrahedron vertices by y = 0") {
    const double r3 = std::sqrt(3.0);
    Eigen::Matrix3Xd p(3, 4);
    p << 0, r3, 0, 0,
         0, 0, 2, -2,
         1, 0, 0, 0;
    const auto [left, right] = split_by_plane(make_points3(p, {}), PlaneThroughOrigin(Eigen::Vector3d::UnitY()));
    CHECK(left.total_mass() == Approx(2.0));
    CHECK(right.total_mass() == Approx(2.0));
    CHECK(left.points.row(1).minCoeff() == Approx(-2.0));
    CHECK(left.points.row(1).maxCoeff() == Approx(0.0));
    CHECK(right.points.row(1).maxCoeff() == Approx(2.0));
    CHECK(right.size() == 3);
  }
  SUBCASE("points at +-z") {
    Eigen::Matrix3Xd p(3, 2);
    p << 0, 0, 0, 0, 1, -1;
    const auto [left, right] = split_by_plane(make_points3(p, {}), PlaneThroughOrigin(Eigen::Vector3d::UnitZ()));
    CHECK(left.size() == 1);
    CHECK(right.size() == 1);
  }
  SUBCASE("all points on the plane") {
    Eigen::Matrix3Xd p(3, 3);
    p << 1, 0, -1, 0, 1, 0, 0, 0, 0;
    const auto [left, right] = split_by_plane(make_points3(p, {}), PlaneThroughOrigin(Eigen::Vector3d::UnitZ()));
    CHECK(left.total_mass() == Approx(1.5));
    CHECK(right.total_mass() == Approx(1.5));
  }
}

TEST_CASE("splits are additive in raw moments") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0, std::numbers::pi);
  for (int trial = 0; trial < 20; ++trial) {
    const Shape poly = make_polygon(oracle::random_convex_polygon(rng, 12));
    const Shape centered = translate(poly, -centroid(poly));
    const auto [l, r] = split_by_line(centered, LineThroughOrigin(u(rng)));
    const auto whole = raw_moments(centered, 6), a = raw_moments(l, 6), b = raw_moments(r, 6);
    const double scale = moment_scale(whole, 1, 0);
    for (const auto& e : whole.exponents())
      CHECK(std::abs(a[e] + b[e] - whole[e]) <= 1e-9 * std::max(std::abs(whole[e]), scale));

    Eigen::Matrix3Xd pts(3, 40);
    for (Eigen::Index i = 0; i < pts.cols(); ++i) pts.col(i) = Eigen::Vector3d(g(rng), g(rng), g(rng));
    const PointSet3 cloud = make_points3(pts, {});
    const auto [pl, pr] = split_by_plane(cloud, PlaneThroughOrigin(oracle::random_unit(rng)));
    const auto w = raw_moments(cloud, 4), x = raw_moments(pl, 4), y = raw_moments(pr, 4);
    for (const auto& e : w.exponents()) CHECK(std::abs(x[e] + y[e] - w[e]) <= 1e-9 * std::max(1.0, std::abs(w[e])));
  }
}

TEST_CASE("construction validation") {
  Eigen::Matrix2Xd bowtie(2, 4);
  bowtie << 0, 1, 1, 0, 0, 1, 0, 1;
  CHECK_FALSE(is_simple(bowtie));
  CHECK_THROWS_AS(make_polygon(bowtie), GeometryError);

  Eigen::Matrix2Xd cw(2, 4);
  cw << 0, 0, 1, 1, 0, 1, 1, 0;
  CHECK(signed_area(make_polygon(cw).vertices) == Approx(1.0));

  TriMesh open = fixtures::tetrahedron();
  open.faces.conservativeResize(3, open.faces.cols() - 1);
  CHECK_THROWS_AS(make_mesh(open.vertices, open.faces), GeometryError);

  TriMesh inside_out = fixtures::cube();
  inside_out.faces.row(0).swap(inside_out.faces.row(1));
  CHECK(signed_volume(make_mesh(inside_out.vertices, inside_out.faces)) == Approx(8.0));

  CHECK_THROWS_AS(make_points2(Eigen::Matrix2Xd(2, 0), {}), InputError);
}

TEST_CASE("canonical directions and angle reduction") {
  CHECK(canonical_direction(Eigen::Vector3d(-1, 2, 0)).isApprox(Eigen::Vector3d(1, -2, 0).normalized()));
  CHECK(canonical_direction(Eigen::Vector3d(0, -3, 1)).y() > 0);
  CHECK(reduce_angle_mod_pi(-0.25) == Approx(std::numbers::pi - 0.25));
  CHECK(reduce_angle_mod_pi(3 * std::numbers::pi + 0.5) == Approx(0.5));
  CHECK(PlaneThroughOrigin(Eigen::Vector3d(0, 0, -2)).normal().isApprox(Eigen::Vector3d::UnitZ()));
}

TEST_CASE("raster to points") {
  Eigen::MatrixXd m(2, 2);
  m << 1, 2, 3, 4;
  const auto pts = to_points(make_raster(m, 0.5, Eigen::Vector2d(1, 1)));
  CHECK(pts.total_mass() == Approx(10.0));
  CHECK(bbox_diagonal(fixtures::unit_square()) == Approx(std::sqrt(2.0)));
}
