#pragma once

#include <array>
#include <string>

#include "quadloc/la/matrix.hpp"

namespace quadloc::model {

// Leg indexing used everywhere: 0 front-left, 1 front-right, 2 rear-left,
// 3 rear-right.  Body frame: x forward, y left, z up.

// Axis-aligned rectangle in the shadow ground plane, one per leg.
struct Workspace {
  double x_min = 0, x_max = 0, y_min = 0, y_max = 0;

  bool contains(double x, double y, double tol = 0.0) const {
    return x >= x_min - tol && x <= x_max + tol && y >= y_min - tol && y <= y_max + tol;
  }
};

struct RobotParams {
  double m = 0;        // body mass [kg]
  la::Mat3 I_g;        // body inertia about the CoM, body frame [kg m^2]
  double g = 9.81;     // gravity [m/s^2]
  double zeta = 0;     // foot sphere radius [m]

  std::array<la::Vec3, 4> p_hip{};  // hip roll-axis origins, body frame
  std::array<double, 4> d{};        // signed lateral hip-to-leg-plane offset
  double l_t = 0;                   // thigh length
  double l_c = 0;                   // calf length

  std::array<la::Vec3, 4> gw{};         // neutral wheel anchors, shadow frame (z = 0)
  std::array<Workspace, 4> workspace{};  // foothold workspaces, shadow frame

  double T_sw_min = 0, T_sw_max = 0;  // swing-time limits [s]
  double beta_min = 0, beta_max = 0;  // duty-factor limits

  double h_swing = 0;  // swing apex height [m]

  std::array<double, 4> k_p_feet{}, k_d_feet{};  // foot tracking gains
  double k_p_body = 0, k_d_body = 0;             // body pose gains

  double T_s = 0;                // control period [s]
  double contact_threshold = 0;  // foot height at or below which contact holds [m]

  std::array<la::Vec3, 4> q_stance{};  // nominal joint angles (roll, hip pitch, knee)

  // Gait period window implied by the swing-time and duty-factor limits.
  double period_min() const { return T_sw_min / (1.0 - beta_min); }
  double period_mid() const { return T_sw_min / (1.0 - beta_max); }
  double period_max() const { return T_sw_max / (1.0 - beta_max); }

  // Block-diagonal generalized inertia (m I_3, I_g).
  la::Mat6 inertia() const {
    la::Mat6 M(6, 6);
    for (int i = 0; i < 3; ++i) M(i, i) = m;
    M.set_block(3, 3, I_g);
    return M;
  }
};

// Parses the line-oriented `key = value(s)` robot description and validates
// physical plausibility.  Raises ParseError naming the offending key/line.
RobotParams load_robot_params(const std::string& path);
RobotParams parse_robot_params(const std::string& text, const std::string& origin);

}  // namespace quadloc::model
