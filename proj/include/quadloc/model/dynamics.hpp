#pragma once

#include <array>

#include "quadloc/la/matrix.hpp"
#include "quadloc/model/robot_params.hpp"

namespace quadloc::model {

// Rank of the stacked contact constraint as a function of how many feet are
// grounded (generic, non-collinear foot placements).
inline constexpr std::array<int, 5> kStanceRank = {0, 3, 5, 6, 6};

inline int stance_rank(int grounded_count) { return kStanceRank[grounded_count]; }

// Per-foot constraint block A_i = [I3, -[gf_i x]]; rows of airborne feet are
// zeroed so the stacked matrix keeps a fixed 12 x 6 shape.
la::Mat<12, 6> constraint_matrix(const std::array<int, 4>& sigma,
                                 const std::array<la::Vec3, 4>& gf_0);

// Gravity wrench in the body frame: (R^T (-m g k), 0).
la::Vec6 gravity_wrench(const la::Mat3& R, double m, double g);

// Drift of the body twist dynamics: M V_dot = contact wrench + drift_wrench.
// Top block R^T(-m g k) - m omega x v, bottom block -omega x (I_g omega).
la::Vec6 drift_wrench(const RobotParams& rp, const la::Mat3& R, const la::Vec6& V);

// Drift of one foot's velocity-level constraint: omega x (A_i V + 2 dgf_i).
la::Vec3 drift_foot(const la::Vec3& gf_0, const la::Vec6& V, const la::Vec3& dgf_0);

// Contact wrench of the robot expressed at the CoM, body frame.
struct BodyWrench {
  la::Vec3 force;
  la::Vec3 moment;
};

// Ground point where the wrench's tipping moment vanishes.  `force_g` is the
// gravity force in the body frame; the vertical component of the total force
// must not vanish (DegenerateWrenchError).  The result lies in the ground
// plane (z = 0 exactly).
la::Vec3 zero_moment_point(const la::Vec3& og_w, const la::Mat3& R, const BodyWrench& inertial,
                           const la::Vec3& force_g0, double tol = 1e-9);

// Inverse map: the CoM position whose zero moment point equals `oz_w` while
// keeping the commanded height `z_ref` and the same wrench.
la::Vec3 zero_moment_point_inverse(const la::Vec3& oz_w, double z_ref, const la::Mat3& R,
                                   const BodyWrench& inertial, const la::Vec3& force_g0,
                                   double tol = 1e-9);

}  // namespace quadloc::model
