#pragma once

#include <array>
#include <cmath>

#include "quadloc/la/matrix.hpp"

namespace quadloc::control {

// High-level commands driving the whole stack: planar velocities in the
// yaw-only shadow frame, a yaw rate, and the body posture to hold.
struct CommandSet {
  double v_fw = 0;   // forward speed [m/s]
  double v_lw = 0;   // lateral speed, positive left [m/s]
  double dpsi = 0;   // yaw rate, positive counter-clockwise [rad/s]
  double z = 0;      // body height [m]
  double phi = 0;    // roll [rad]
  double theta = 0;  // pitch [rad]

  // True when any velocity command is non-zero (the gait idles otherwise).
  bool moving(double eps = 1e-12) const {
    return std::abs(v_fw) > eps || std::abs(v_lw) > eps || std::abs(dpsi) > eps;
  }
};

// Feedback bundle shared by the control blocks each tick: the body state as
// tracked by the internal model plus the measured joint angles and contacts.
struct ModelData {
  la::Vec6 q0;                      // body pose (x, y, z, phi, theta, psi)
  la::Vec6 V;                       // body twist, body frame
  std::array<la::Vec3, 4> q{};      // measured joint angles per leg
  std::array<int, 4> sigma{};       // measured contact flags
  std::array<la::Vec3, 4> of_w{};   // foot contact points, world
  std::array<la::Vec3, 4> dof_w{};  // foot point velocities, world
  std::array<la::Vec3, 4> gf_0{};   // contact points relative to the CoM, body frame

  int grounded_count() const { return sigma[0] + sigma[1] + sigma[2] + sigma[3]; }
};

}  // namespace quadloc::control
