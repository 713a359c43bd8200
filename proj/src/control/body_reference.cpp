#include "quadloc/control/body_reference.hpp"

#include "quadloc/model/dynamics.hpp"
#include "quadloc/model/kinematics.hpp"

namespace quadloc::control {

BodyReference::BodyReference(const model::RobotParams& rp, const la::Vec6& q0_init)
    : rp_(rp), x_(q0_init[0]), y_(q0_init[1]), psi_(q0_init[5]) {}

BodyRefs BodyReference::tick(const CommandSet& cmds, const ModelData& md) {
  psi_ += cmds.dpsi * rp_.T_s;
  const la::Mat3 Rz = la::rot_z(psi_);
  const la::Vec3 v_world = Rz * la::vec3(cmds.v_fw, cmds.v_lw, 0.0);
  x_ += v_world[0] * rp_.T_s;
  y_ += v_world[1] * rp_.T_s;

  BodyRefs out;
  out.og_star = la::vec3(x_, y_, cmds.z);
  out.dq0_star = la::vec6(v_world[0], v_world[1], 0.0, 0.0, 0.0, cmds.dpsi);

  // Steady-state wrench implied by holding the rate reference (zero pose
  // acceleration): pure gyroscopic terms of the reference twist.
  const la::Mat3 R = model::body_rotation(cmds.phi, cmds.theta, psi_);
  const la::Vec3 omega = model::euler_rate_map(cmds.phi, cmds.theta) * la::vec3(0.0, 0.0, cmds.dpsi);
  const la::Vec3 v_body = R.transposed() * v_world;
  model::BodyWrench wrench;
  wrench.force = rp_.m * la::cross(omega, v_body);
  wrench.moment = la::cross(omega, rp_.I_g * omega);
  const la::Vec3 force_g0 = R.transposed() * la::vec3(0.0, 0.0, -rp_.m * rp_.g);

  out.oz_star = model::zero_moment_point(out.og_star, R, wrench, force_g0);

  la::Vec3 og_safe = out.og_star;
  if (md.grounded_count() == 0) {
    out.flight = true;
    out.oz_clamped = out.oz_star;
  } else {
    const model::SupportPolygon poly = model::support_polygon(md.sigma, md.of_w);
    out.oz_clamped = poly.closest_point(out.oz_star);
    og_safe = model::zero_moment_point_inverse(out.oz_clamped, cmds.z, R, wrench, force_g0);
    out.clamp_active = la::norm(out.oz_clamped - out.oz_star) > 0.0;
  }

  out.q0_star = la::vec6(og_safe[0], og_safe[1], og_safe[2], cmds.phi, cmds.theta, psi_);
  return out;
}

}  // namespace quadloc::control
