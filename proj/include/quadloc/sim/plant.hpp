#pragma once

#include <array>
#include <cstdint>

#include "quadloc/la/matrix.hpp"
#include "quadloc/model/robot_params.hpp"

namespace quadloc::sim {

// Optional additive joint-angle disturbance for robustness exploration.
// Off by default and excluded from every bundled scenario and regression.
struct Perturbation {
  bool enabled = false;
  double amplitude = 0.0;  // rad, uniform in [-amplitude, amplitude]
  std::uint64_t seed = 0;
};

// The desk-scale robot stand-in: perfect velocity-servo legs on flat ground.
// It owns the joint angles only; the body pose evolves in the controller's
// internal dynamical model and is shared back through the loop.
class Plant {
 public:
  explicit Plant(const model::RobotParams& rp);

  // Explicit Euler: q += qdot * T_s, plus the optional disturbance.
  void integrate_joints(const std::array<la::Vec3, 4>& qdot);

  const std::array<la::Vec3, 4>& joints() const { return q_; }
  void set_joints(const std::array<la::Vec3, 4>& q) { q_ = q; }
  void set_perturbation(const Perturbation& p);

 private:
  double next_noise();

  double T_s_;
  std::array<la::Vec3, 4> q_;
  Perturbation pert_;
  std::uint64_t rng_;
};

// Ground contact by foot height: grounded iff the world z-coordinate of the
// foot contact point is at or below the threshold.
std::array<int, 4> detect_contacts(const std::array<la::Vec3, 4>& of_w, double threshold);

}  // namespace quadloc::sim
