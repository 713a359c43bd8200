#include "quadloc/model/dynamics.hpp"

#include <cmath>

#include "quadloc/error.hpp"

namespace quadloc::model {

using la::Mat3;
using la::Vec3;
using la::Vec6;

la::Mat<12, 6> constraint_matrix(const std::array<int, 4>& sigma,
                                 const std::array<Vec3, 4>& gf_0) {
  la::Mat<12, 6> A(12, 6);
  for (int i = 0; i < 4; ++i) {
    if (!sigma[i]) continue;
    for (int k = 0; k < 3; ++k) A(3 * i + k, k) = 1.0;
    A.set_block(3 * i, 3, -1.0 * la::skew(gf_0[i]));
  }
  return A;
}

Vec6 gravity_wrench(const Mat3& R, double m, double g) {
  Vec6 w(6, 1);
  w.set_block(0, 0, R.transposed() * la::vec3(0.0, 0.0, -m * g));
  return w;
}

Vec6 drift_wrench(const RobotParams& rp, const Mat3& R, const Vec6& V) {
  const Vec3 v = la::vec3(V[0], V[1], V[2]);
  const Vec3 omega = la::vec3(V[3], V[4], V[5]);
  Vec6 h = gravity_wrench(R, rp.m, rp.g);
  h.set_block(0, 0, h.block<3, 1>(0, 0) - rp.m * la::cross(omega, v));
  h.set_block(3, 0, -1.0 * la::cross(omega, rp.I_g * omega));
  return h;
}

Vec3 drift_foot(const Vec3& gf_0, const Vec6& V, const Vec3& dgf_0) {
  const Vec3 v = la::vec3(V[0], V[1], V[2]);
  const Vec3 omega = la::vec3(V[3], V[4], V[5]);
  return la::cross(omega, v + la::cross(omega, gf_0) + 2.0 * dgf_0);
}

namespace {

struct GroundWrench {
  Vec3 force_w;   // total force the ground must exert, world frame
  Vec3 moment_w;  // inertial moment about the CoM, world frame
};

GroundWrench ground_wrench(const Mat3& R, const BodyWrench& inertial, const Vec3& force_g0,
                           double tol) {
  GroundWrench gw;
  gw.force_w = R * (inertial.force - force_g0);
  gw.moment_w = R * inertial.moment;
  if (std::abs(gw.force_w[2]) < tol)
    throw DegenerateWrenchError("vertical ground force is numerically zero");
  return gw;
}

}  // namespace

Vec3 zero_moment_point(const Vec3& og_w, const Mat3& R, const BodyWrench& inertial,
                       const Vec3& force_g0, double tol) {
  const GroundWrench gw = ground_wrench(R, inertial, force_g0, tol);
  const double z = og_w[2];
  const double fz = gw.force_w[2];
  // k x M = (-My, Mx, 0); the z component is forced to exact zero rather than
  // trusting z*fz/fz to round back to z.
  return la::vec3(og_w[0] - (z * gw.force_w[0] + gw.moment_w[1]) / fz,
                  og_w[1] - (z * gw.force_w[1] - gw.moment_w[0]) / fz, 0.0);
}

Vec3 zero_moment_point_inverse(const Vec3& oz_w, double z_ref, const Mat3& R,
                               const BodyWrench& inertial, const Vec3& force_g0, double tol) {
  const GroundWrench gw = ground_wrench(R, inertial, force_g0, tol);
  const double fz = gw.force_w[2];
  // Commanded height is passed through untouched so the caller's z reference
  // survives the clamp bit for bit.
  return la::vec3(oz_w[0] + (z_ref * gw.force_w[0] + gw.moment_w[1]) / fz,
                  oz_w[1] + (z_ref * gw.force_w[1] - gw.moment_w[0]) / fz, z_ref);
}

}  // namespace quadloc::model
