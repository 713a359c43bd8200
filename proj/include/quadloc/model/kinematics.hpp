#pragma once

#include <array>

#include "quadloc/la/matrix.hpp"
#include "quadloc/model/robot_params.hpp"

namespace quadloc::model {

// Body pose vector q0 = (x, y, z, phi, theta, psi): world position of the CoM
// followed by roll/pitch/yaw.  The body twist V = (v, omega) lives in the body
// frame and relates to the pose rates through V = J(q0) * q0_dot.

// R_0^w = Rz(psi) * Ry(theta) * Rx(phi).
la::Mat3 body_rotation(double phi, double theta, double psi);
la::Mat3 body_rotation(const la::Vec6& q0);

// Maps (phi_dot, theta_dot, psi_dot) to the body-frame angular velocity.
la::Mat3 euler_rate_map(double phi, double theta);

// det(euler_rate_map) = cos(theta); the guard raises GimbalSingularityError.
la::Mat3 euler_rate_map_inverse(double phi, double theta, double guard = 1e-6);

// Time derivative of euler_rate_map along the given angle rates.
la::Mat3 euler_rate_map_rate(double phi, double theta, double dphi, double dtheta);

// J = blockdiag(R^T, Omega), its inverse blockdiag(R, Omega^-1), and its time
// derivative blockdiag(-[omega x] R^T, Omega_dot).
la::Mat6 body_jacobian(const la::Vec6& q0);
la::Mat6 body_jacobian_inverse(const la::Vec6& q0, double guard = 1e-6);
la::Mat6 body_jacobian_rate(const la::Vec6& q0, const la::Vec6& q0_dot);

// Wraps an angle to (-pi, pi].
double wrap_angle(double a);

struct LegKin {
  la::Vec3 ge;    // ankle center, body frame
  la::Vec3 knee;  // knee joint position, body frame
  la::Mat3 J;     // d(ge)/d(q), columns are axis x lever terms
};

// Chain: hip roll about x at p_hip, lateral offset d along y, hip pitch and
// knee about the rotated y axis, thigh and calf pointing down their -z.
LegKin leg_forward_kinematics(const RobotParams& rp, int leg, const la::Vec3& q);

// Leg Jacobian inverse with a determinant guard (stretched/folded leg).
la::Mat3 leg_jacobian_inverse(const la::Mat3& J, double tol = 1e-8);

struct FootPoint {
  la::Vec3 oe_w;  // ankle center, world
  la::Vec3 of_w;  // foot contact point, world (ankle dropped by zeta)
  la::Vec3 gf_0;  // contact point relative to the CoM, body frame
};

// Contact point of a foot sphere on flat ground: the sphere bottom.
FootPoint foot_point(const la::Vec3& og_w, const la::Mat3& R, const la::Vec3& ge_0, double zeta);

// World-frame foot point velocity R * (A_i V + dgf_i) with A_i = [I3, -[gf_i x]].
la::Vec3 foot_point_velocity(const la::Mat3& R, const la::Vec3& gf_0, const la::Vec6& V,
                             const la::Vec3& dgf_0);

}  // namespace quadloc::model
