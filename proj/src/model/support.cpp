#include "quadloc/model/support.hpp"

#include <algorithm>
#include <cmath>

#include "quadloc/error.hpp"

namespace quadloc::model {

using la::Vec3;

namespace {

double cross2(const Vec3& o, const Vec3& a, const Vec3& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

double dist2(const Vec3& a, const Vec3& b) {
  const double dx = a[0] - b[0], dy = a[1] - b[1];
  return dx * dx + dy * dy;
}

Vec3 closest_on_segment(const Vec3& a, const Vec3& b, const Vec3& p) {
  const double abx = b[0] - a[0], aby = b[1] - a[1];
  const double len2 = abx * abx + aby * aby;
  if (len2 == 0.0) return la::vec3(a[0], a[1], 0.0);
  double t = ((p[0] - a[0]) * abx + (p[1] - a[1]) * aby) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return la::vec3(a[0] + t * abx, a[1] + t * aby, 0.0);
}

}  // namespace

SupportPolygon support_polygon(const std::array<int, 4>& sigma,
                               const std::array<Vec3, 4>& of_w) {
  // Gather grounded ground-plane points, dropping exact duplicates.
  std::array<Vec3, 4> pts;
  int n = 0;
  for (int i = 0; i < 4; ++i) {
    if (!sigma[i]) continue;
    const Vec3 p = la::vec3(of_w[i][0], of_w[i][1], 0.0);
    bool dup = false;
    for (int j = 0; j < n; ++j) dup = dup || dist2(pts[j], p) < 1e-24;
    if (!dup) pts[n++] = p;
  }
  if (n == 0) throw EmptyPolygonError("no grounded feet");

  SupportPolygon poly;
  if (n <= 2) {
    poly.n = n;
    for (int i = 0; i < n; ++i) poly.v[i] = pts[i];
    return poly;
  }

  // Andrew monotone chain on at most four points; collinear middles are
  // dropped so the hull may degenerate to a segment.
  std::sort(pts.begin(), pts.begin() + n, [](const Vec3& a, const Vec3& b) {
    return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
  });

  std::array<Vec3, 8> hull;
  int k = 0;
  for (int i = 0; i < n; ++i) {  // lower hull
    while (k >= 2 && cross2(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  for (int i = n - 2, lower = k + 1; i >= 0; --i) {  // upper hull
    while (k >= lower && cross2(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  --k;  // last point equals the first

  poly.n = k;
  for (int i = 0; i < k; ++i) poly.v[i] = hull[i];
  return poly;
}

bool SupportPolygon::contains(const Vec3& p, double tol) const {
  if (n == 1) return dist2(v[0], p) <= tol * tol;
  if (n == 2) return dist2(closest_on_segment(v[0], v[1], p), p) <= tol * tol;
  for (int i = 0; i < n; ++i) {
    const Vec3& a = v[i];
    const Vec3& b = v[(i + 1) % n];
    const double len = std::sqrt(dist2(a, b));
    if (cross2(a, b, p) < -tol * len) return false;  // signed distance below -tol
  }
  return true;
}

Vec3 SupportPolygon::closest_point(const Vec3& p) const {
  const Vec3 q = la::vec3(p[0], p[1], 0.0);
  if (n == 1) return v[0];
  if (n >= 3 && contains(q, 0.0)) return q;
  Vec3 best = closest_on_segment(v[0], v[n > 1 ? 1 : 0], q);
  double best_d = dist2(best, q);
  for (int i = 1; i < n; ++i) {
    const Vec3 cand = closest_on_segment(v[i], v[(i + 1) % n], q);
    const double d = dist2(cand, q);
    if (d < best_d) {
      best_d = d;
      best = cand;
    }
  }
  return best;
}

}  // namespace quadloc::model
