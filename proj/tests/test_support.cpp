#include <doctest.h>

#include <cmath>

#include "quadloc/error.hpp"
#include "quadloc/model/support.hpp"
#include "support/rng.hpp"

using namespace quadloc;
using namespace quadloc::model;
using la::Vec3;
using testsupport::Rng;

namespace {

double shoelace(const SupportPolygon& p) {
  double area2 = 0.0;
  for (int i = 0; i < p.n; ++i) {
    const Vec3& a = p.v[i];
    const Vec3& b = p.v[(i + 1) % p.n];
    area2 += a[0] * b[1] - b[0] * a[1];
  }
  return area2;
}

std::array<Vec3, 4> feet(Vec3 a, Vec3 b, Vec3 c, Vec3 d) { return {a, b, c, d}; }

}  // namespace

TEST_CASE("four grounded feet give a counter-clockwise quadrilateral") {
  const auto of = feet(la::vec3(0.2, 0.15, 0.01), la::vec3(0.2, -0.15, 0.0),
                       la::vec3(-0.2, 0.15, -0.002), la::vec3(-0.2, -0.15, 0.0));
  const auto poly = support_polygon({1, 1, 1, 1}, of);
  CHECK(poly.n == 4);
  CHECK(shoelace(poly) > 0.0);
  for (int i = 0; i < poly.n; ++i) CHECK(poly.v[i][2] == 0.0);
  CHECK(poly.contains(la::vec3(0, 0, 0)));
  CHECK(poly.contains(la::vec3(0.2, 0.15, 0)));   // vertex
  CHECK(poly.contains(la::vec3(0.2, 0.0, 0)));    // edge midpoint
  CHECK(!poly.contains(la::vec3(0.21, 0.0, 0)));
  CHECK(!poly.contains(la::vec3(0.0, 0.16, 0)));
}

TEST_CASE("a vertex inside the hull of the others is dropped") {
  const auto of = feet(la::vec3(0.0, 0.0, 0.0), la::vec3(1.0, 0.0, 0.0),
                       la::vec3(0.0, 1.0, 0.0), la::vec3(0.1, 0.1, 0.0));
  const auto poly = support_polygon({1, 1, 1, 1}, of);
  CHECK(poly.n == 3);
  CHECK(shoelace(poly) > 0.0);
  CHECK(poly.contains(la::vec3(0.1, 0.1, 0)));
}

TEST_CASE("degenerate stances collapse to segments and points") {
  const auto of = feet(la::vec3(0.0, 0.0, 0.0), la::vec3(1.0, 1.0, 0.0),
                       la::vec3(0.5, 0.5, 0.0), la::vec3(9, 9, 9));
  const auto seg = support_polygon({1, 1, 1, 0}, of);
  CHECK(seg.n == 2);  // three collinear feet
  CHECK(seg.contains(la::vec3(0.25, 0.25, 0)));
  CHECK(!seg.contains(la::vec3(0.25, 0.30, 0)));

  const auto pt = support_polygon({0, 0, 1, 0}, of);
  CHECK(pt.n == 1);
  CHECK(pt.contains(la::vec3(0.5, 0.5, 0)));
  CHECK(la::max_abs(pt.closest_point(la::vec3(4, 4, 0)) - la::vec3(0.5, 0.5, 0)) == 0.0);

  CHECK_THROWS_AS(support_polygon({0, 0, 0, 0}, of), EmptyPolygonError);
}

TEST_CASE("closest point is the identity inside and the projection outside") {
  const auto of = feet(la::vec3(0.2, 0.15, 0), la::vec3(0.2, -0.15, 0),
                       la::vec3(-0.2, 0.15, 0), la::vec3(-0.2, -0.15, 0));
  const auto poly = support_polygon({1, 1, 1, 1}, of);

  const Vec3 inside = la::vec3(0.05, -0.04, 0.0);
  CHECK(la::max_abs(poly.closest_point(inside) - inside) == 0.0);

  // Straight out of the right edge.
  const Vec3 right = poly.closest_point(la::vec3(0.5, 0.02, 0));
  CHECK(right[0] == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(right[1] == doctest::Approx(0.02).epsilon(1e-14));

  // Beyond a corner the corner is closest.
  const Vec3 corner = poly.closest_point(la::vec3(0.6, 0.7, 0));
  CHECK(la::max_abs(corner - la::vec3(0.2, 0.15, 0)) < 1e-14);
}

TEST_CASE("closest point beats a dense boundary sampling") {
  Rng rng(51);
  for (int trial = 0; trial < 50; ++trial) {
    std::array<Vec3, 4> of;
    const double sx[4] = {1, 1, -1, -1};
    const double sy[4] = {1, -1, 1, -1};
    for (int i = 0; i < 4; ++i)
      of[i] = la::vec3(sx[i] * rng.uniform(0.05, 0.4), sy[i] * rng.uniform(0.05, 0.4), 0.0);
    const auto poly = support_polygon({1, 1, 1, 1}, of);
    const Vec3 p = la::vec3(rng.uniform(-1, 1), rng.uniform(-1, 1), 0.0);
    const Vec3 cp = poly.closest_point(p);

    // The result must itself belong to the polygon...
    CHECK(poly.contains(cp, 1e-12));
    // ...and no finely sampled boundary point may be meaningfully closer.
    const double d_cp = la::norm(cp - p);
    double d_best = d_cp;
    for (int e = 0; e < poly.n; ++e)
      for (int s = 0; s <= 200; ++s) {
        const double t = s / 200.0;
        const Vec3 q = poly.v[e] + t * (poly.v[(e + 1) % poly.n] - poly.v[e]);
        d_best = std::min(d_best, la::norm(q - p));
      }
    CHECK(d_cp <= d_best + 1e-12);
  }
}
