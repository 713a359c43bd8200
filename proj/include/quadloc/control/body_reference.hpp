#pragma once

#include "quadloc/control/types.hpp"
#include "quadloc/la/matrix.hpp"
#include "quadloc/model/robot_params.hpp"
#include "quadloc/model/support.hpp"

namespace quadloc::control {

// Pose references after the stability clamp.
struct BodyRefs {
  la::Vec6 q0_star;         // clamped pose reference (og, phi, theta, psi)
  la::Vec6 dq0_star;        // pose-rate reference (world velocity, 0, 0, yaw rate)
  la::Vec3 og_star;         // unclamped integrated position reference
  la::Vec3 oz_star;         // zero moment point implied by the raw reference
  la::Vec3 oz_clamped;      // its projection into the support polygon
  bool flight = false;      // no grounded feet: clamp skipped, reference held
  bool clamp_active = false;
};

// Integrates the velocity commands into a pose reference, computes the zero
// moment point that reference implies, projects it into the support polygon,
// and back-solves the body position that realizes the projected point.
class BodyReference {
 public:
  BodyReference(const model::RobotParams& rp, const la::Vec6& q0_init);

  BodyRefs tick(const CommandSet& cmds, const ModelData& md);

  double psi_ref() const { return psi_; }

 private:
  model::RobotParams rp_;
  double x_;
  double y_;
  double psi_;
};

}  // namespace quadloc::control
