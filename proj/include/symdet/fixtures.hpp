#pragma once

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "symdet/shapes.hpp"

namespace symdet::fixtures {

// Right triangles on A(0,3), O(0,0), B(3 sqrt 3, 0) and its mirror B'(-3 sqrt 3, 0).
Polygon triangle_aob();
Polygon triangle_aob_prime();
/// Unit-mass points {A, B, B'}: isosceles about the y axis.
PointSet2 isosceles_points();

// Tetrahedra on A(0,0,1), O, B(sqrt 3,0,0), C(0,2,0), D(0,-2,0).
TriMesh tetra_aobd();
TriMesh tetra_aobc();
/// Unit-mass points {A, B, C, D, O}.
PointSet3 tetra_points();

/// Vertex up, centroid at the origin, circumradius 1.
Polygon equilateral_triangle();
/// [0,1]^2.
Polygon unit_square();

TriMesh tetrahedron();
TriMesh cube();
TriMesh octahedron();
TriMesh dodecahedron();
TriMesh icosahedron();

/// Closed outward-oriented triangle mesh of the convex hull of `vertices`; planar
/// faces with more than three vertices are fan-triangulated. Every vertex must be extreme.
TriMesh convex_hull_mesh(const Eigen::Matrix3Xd& vertices);

/// Seven equilateral unit triangles with 3-fold rotation and no mirror;
/// centroid (1/2, -sqrt 3 / 6).
Polygon weyl_polygon();
/// weyl_polygon extruded to z in [-height/2, height/2].
TriMesh weyl_prism(double height = 1.0);

/// Ear-clipping triangulation of a simple counterclockwise polygon.
std::vector<std::array<int, 3>> triangulate_polygon(const Eigen::Matrix2Xd& vertices);

/// Cell centres of a per_side x per_side grid on [0,1]^2, each jittered by N(0, sigma^2).
PointSet2 noisy_square_cloud(int per_side, double sigma, std::uint64_t seed);

/// Names accepted by by_name, in a stable order.
const std::vector<std::string>& names();
Shape by_name(const std::string& name);

}  // namespace symdet::fixtures
