#include "quadloc/model/kinematics.hpp"

#include <cmath>

#include "quadloc/error.hpp"

namespace quadloc::model {

using la::Mat3;
using la::Mat6;
using la::Vec3;
using la::Vec6;

Mat3 body_rotation(double phi, double theta, double psi) {
  return la::rot_z(psi) * la::rot_y(theta) * la::rot_x(phi);
}

Mat3 body_rotation(const Vec6& q0) { return body_rotation(q0[3], q0[4], q0[5]); }

Mat3 euler_rate_map(double phi, double theta) {
  const double cf = std::cos(phi), sf = std::sin(phi);
  const double ct = std::cos(theta), st = std::sin(theta);
  Mat3 w;
  w(0, 0) = 1.0;
  w(0, 2) = -st;
  w(1, 1) = cf;
  w(1, 2) = sf * ct;
  w(2, 1) = -sf;
  w(2, 2) = cf * ct;
  return w;
}

Mat3 euler_rate_map_inverse(double phi, double theta, double guard) {
  const double ct = std::cos(theta);
  if (std::abs(ct) < guard)
    throw GimbalSingularityError("pitch too close to +-pi/2, |cos(theta)| = " +
                                 std::to_string(std::abs(ct)));
  const double cf = std::cos(phi), sf = std::sin(phi);
  const double tt = std::tan(theta);
  // Closed form of euler_rate_map^-1; det(map) = cos(theta).
  Mat3 inv;
  inv(0, 0) = 1.0;
  inv(0, 1) = sf * tt;
  inv(0, 2) = cf * tt;
  inv(1, 1) = cf;
  inv(1, 2) = -sf;
  inv(2, 1) = sf / ct;
  inv(2, 2) = cf / ct;
  return inv;
}

Mat3 euler_rate_map_rate(double phi, double theta, double dphi, double dtheta) {
  const double cf = std::cos(phi), sf = std::sin(phi);
  const double ct = std::cos(theta), st = std::sin(theta);
  Mat3 dw(3, 3);
  dw(0, 2) = -ct * dtheta;
  dw(1, 1) = -sf * dphi;
  dw(1, 2) = cf * dphi * ct - sf * st * dtheta;
  dw(2, 1) = -cf * dphi;
  dw(2, 2) = -sf * dphi * ct - cf * st * dtheta;
  return dw;
}

Mat6 body_jacobian(const Vec6& q0) {
  Mat6 j(6, 6);
  j.set_block(0, 0, body_rotation(q0).transposed());
  j.set_block(3, 3, euler_rate_map(q0[3], q0[4]));
  return j;
}

Mat6 body_jacobian_inverse(const Vec6& q0, double guard) {
  Mat6 j(6, 6);
  j.set_block(0, 0, body_rotation(q0));
  j.set_block(3, 3, euler_rate_map_inverse(q0[3], q0[4], guard));
  return j;
}

Mat6 body_jacobian_rate(const Vec6& q0, const Vec6& q0_dot) {
  const Mat3 rt = body_rotation(q0).transposed();
  const Vec3 euler_rates = la::vec3(q0_dot[3], q0_dot[4], q0_dot[5]);
  const Vec3 omega = euler_rate_map(q0[3], q0[4]) * euler_rates;
  Mat6 dj(6, 6);
  dj.set_block(0, 0, -1.0 * (la::skew(omega) * rt));
  dj.set_block(3, 3, euler_rate_map_rate(q0[3], q0[4], q0_dot[3], q0_dot[4]));
  return dj;
}

double wrap_angle(double a) {
  a = std::fmod(a, 2.0 * M_PI);
  if (a > M_PI) a -= 2.0 * M_PI;
  if (a <= -M_PI) a += 2.0 * M_PI;
  return a;
}

LegKin leg_forward_kinematics(const RobotParams& rp, int leg, const Vec3& q) {
  const Mat3 rx = la::rot_x(q[0]);
  const Mat3 ry_hip = la::rot_y(q[1]);
  const Mat3 ry_knee = la::rot_y(q[2]);

  const Vec3 offset = la::vec3(0.0, rp.d[leg], 0.0);
  const Vec3 thigh = la::vec3(0.0, 0.0, -rp.l_t);
  const Vec3 calf = la::vec3(0.0, 0.0, -rp.l_c);

  LegKin out;
  out.knee = rp.p_hip[leg] + rx * (offset + ry_hip * thigh);
  out.ge = rp.p_hip[leg] + rx * (offset + ry_hip * (thigh + ry_knee * calf));

  // Column k is (joint axis) x (point minus joint origin).
  const Vec3 axis_roll = la::vec3(1.0, 0.0, 0.0);
  const Vec3 axis_pitch = rx * la::vec3(0.0, 1.0, 0.0);
  const Vec3 hip_pitch_origin = rp.p_hip[leg] + rx * offset;
  out.J.set_block(0, 0, la::cross(axis_roll, out.ge - rp.p_hip[leg]));
  out.J.set_block(0, 1, la::cross(axis_pitch, out.ge - hip_pitch_origin));
  out.J.set_block(0, 2, la::cross(axis_pitch, out.ge - out.knee));
  return out;
}

Mat3 leg_jacobian_inverse(const Mat3& J, double tol) {
  if (std::abs(la::det3(J)) < tol)
    throw LegSingularityError("leg Jacobian determinant " + std::to_string(la::det3(J)));
  return la::inverse3(J, tol);
}

FootPoint foot_point(const Vec3& og_w, const Mat3& R, const Vec3& ge_0, double zeta) {
  FootPoint fp;
  fp.oe_w = og_w + R * ge_0;
  fp.of_w = fp.oe_w - la::vec3(0.0, 0.0, zeta);
  fp.gf_0 = ge_0 - zeta * (R.transposed() * la::vec3(0.0, 0.0, 1.0));
  return fp;
}

Vec3 foot_point_velocity(const Mat3& R, const Vec3& gf_0, const Vec6& V, const Vec3& dgf_0) {
  const Vec3 v = la::vec3(V[0], V[1], V[2]);
  const Vec3 omega = la::vec3(V[3], V[4], V[5]);
  return R * (v + la::cross(omega, gf_0) + dgf_0);
}

}  // namespace quadloc::model
