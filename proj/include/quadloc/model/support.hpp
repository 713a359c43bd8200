#pragma once

#include <array>

#include "quadloc/la/matrix.hpp"

namespace quadloc::model {

// Convex hull of the grounded foot points projected to the ground plane.
// Vertices are counter-clockwise; degenerate stances yield a segment (n = 2)
// or a single point (n = 1).  Constructing one with no grounded feet raises
// EmptyPolygonError.
struct SupportPolygon {
  int n = 0;
  std::array<la::Vec3, 4> v{};  // z = 0 on every vertex

  // Point-in-polygon with a signed-distance tolerance; degenerate shapes test
  // distance to the segment or vertex.
  bool contains(const la::Vec3& p, double tol = 1e-12) const;

  // Closest polygon point to p in the ground plane (p itself when inside).
  la::Vec3 closest_point(const la::Vec3& p) const;
};

SupportPolygon support_polygon(const std::array<int, 4>& sigma,
                               const std::array<la::Vec3, 4>& of_w);

}  // namespace quadloc::model
