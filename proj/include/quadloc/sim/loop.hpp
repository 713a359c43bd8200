#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "quadloc/control/body_manager.hpp"
#include "quadloc/control/body_reference.hpp"
#include "quadloc/control/feet_manager.hpp"
#include "quadloc/control/types.hpp"
#include "quadloc/model/robot_params.hpp"
#include "quadloc/sim/plant.hpp"
#include "quadloc/sim/scenario.hpp"

namespace quadloc::sim {

struct LoopOptions {
  double rate_hz = 0;    // control rate override; 0 keeps the parameter file's T_s
  double duration = 0;   // run-length override in seconds; 0 keeps the scenario's
  bool timing = false;   // measure per-tick wall time (column stays 0 otherwise)
  Perturbation perturbation;
};

// One trace row per control tick.  `t` is the tick's command time; the contact
// flags and measured foot positions are the tick's inputs, while the pose,
// velocities and references describe its outcome (the state one step later).
struct TickData {
  double t = 0;
  la::Vec6 q0;                     // actual body pose
  la::Vec6 q0_ref;                 // unclamped pose reference
  double v_fw = 0, v_lw = 0, dpsi = 0;
  double v_fw_ref = 0, v_lw_ref = 0, dpsi_ref = 0;
  std::array<int, 4> sigma{};
  int N = 0;
  int r = 0;
  double T = 0;
  double beta = 0;
  double clock = 0;
  std::array<la::Vec3, 4> of_w{};  // measured foot contact points
  std::int64_t duration_ns = 0;
  long iterations = 0;
};

// Owns the plant and the three controller blocks and steps them in lockstep.
// Any module error during a tick surfaces as RuntimeFault with the tick index.
class SimulationLoop {
 public:
  SimulationLoop(const model::RobotParams& rp, const Scenario& sc, const LoopOptions& opt = {});

  TickData step();
  std::vector<TickData> run();

  long total_ticks() const { return total_ticks_; }
  long tick_index() const { return n_; }
  const model::RobotParams& params() const { return rp_; }
  const control::ModelData& data() const { return md_; }

  // Most recent per-tick module outputs, for inspection beyond the trace row.
  const control::FeetOutput& last_feet() const { return feet_out_; }
  const control::BodyRefs& last_refs() const { return refs_; }
  const control::BodyManager& body() const { return body_; }

 private:
  void refresh_model_data();

  model::RobotParams rp_;
  Scenario sc_;
  LoopOptions opt_;
  Plant plant_;
  control::FeetManager feet_;
  control::BodyReference ref_;
  control::BodyManager body_;
  control::ModelData md_;
  control::FeetOutput feet_out_;
  control::BodyRefs refs_;
  long n_ = 0;
  long total_ticks_ = 0;
};

// Initial body pose implied by the nominal stance: feet exactly on the ground.
la::Vec6 initial_pose(const model::RobotParams& rp);

}  // namespace quadloc::sim
