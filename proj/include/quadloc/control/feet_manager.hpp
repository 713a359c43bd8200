#pragma once

#include <array>

#include "quadloc/control/types.hpp"
#include "quadloc/la/matrix.hpp"
#include "quadloc/model/robot_params.hpp"

namespace quadloc::control {

// Four imaginary ground wheels rigidly attached to the body's yaw-only shadow
// frame.  `kw_s` is a wheel's shadow-frame seat: the body anchor projected to
// the ground through the current roll and pitch.  `ow` is the wheel centre in
// the world, `dow` its commanded velocity; `u_s` is that same velocity seen
// from the shadow frame.  All z components are zero.
struct WheelState {
  std::array<la::Vec3, 4> ow{};
  std::array<la::Vec3, 4> dow{};
  std::array<la::Vec3, 4> u_s{};
  std::array<la::Vec3, 4> kw_s{};
};

WheelState wheel_commands(const CommandSet& cmds, const la::Vec6& q0,
                          const std::array<la::Vec3, 4>& gw);

// Straight-line foothold extrapolations for the current period: where the
// foot lifted (or will lift) and where it must land when the period ends.
struct Footholds {
  la::Vec3 start;
  la::Vec3 end;
};

Footholds footholds(const la::Vec3& ow, const la::Vec3& dow, double t, double T);

struct PeriodResult {
  double T = 0;
  double beta = 0;
  double T_sw = 0;
  bool clamped = false;  // some wheel exits its workspace before T_min
};

// Ground pose of the shadow frame captured when the gait period began.  The
// workspace rectangles stay pinned there for the whole period while the body
// walks across them.
struct ShadowPose {
  double x = 0;
  double y = 0;
  double psi = 0;
};

// Largest period that keeps every predicted foothold inside its workspace:
// each wheel's straight world ray is intersected with its rectangle pinned at
// the period-start pose (exact exit parameter), so the period ends when a
// wheel crosses the rectangle it started in.  The result is folded through
// the duty-factor window: long periods saturate beta, short ones pin the
// swing time, and anything below the minimum period is clamped and flagged.
PeriodResult compute_period(const WheelState& wheels, const ShadowPose& pinned, double t,
                            const model::RobotParams& rp);

// The six leg lifting orders; every row starts with the front-left leg.
enum class Motion { kForwards, kBackwards, kLeftwards, kRightwards, kCcw, kCw };

std::array<int, 4> schedule_row(Motion m);

// Predominant-motion pick: rotation when the front and rear average wheel
// velocities oppose, otherwise the bearing sector of the translation command
// against the wheel-seat bearings.  Zero commands keep the previous schedule.
std::array<int, 4> select_gait_schedule(const CommandSet& cmds, const WheelState& wheels,
                                        const std::array<int, 4>& previous);

// Lift-off instants per leg: slots (0, T/2 - T_sw, T/2, T - T_sw) assigned in
// schedule order.
std::array<double, 4> lift_off_times(const std::array<int, 4>& order, double T, double T_sw);

// One foot's reference sample.
struct FootRef {
  la::Vec3 pos;
  la::Vec3 vel;
  la::Vec3 acc;
  int swing = 0;  // 1 while the reference is airborne
};

// Cycloidal swing arc from start to end foothold with apex height h, swinging
// during [t0, t0 + T_sw).  Outside that window the reference rests on the
// nearer foothold with exactly zero rates.
FootRef swing_reference(const Footholds& fh, double t0, double T_sw, double h, double t);

struct FootRefs {
  std::array<la::Vec3, 4> pos{};
  std::array<la::Vec3, 4> vel{};
  std::array<la::Vec3, 4> acc{};
  std::array<int, 4> swing{};
};

// PD tracking of the foot references, producing world-frame foot
// accelerations for every foot (grounded ones hold their foothold).
std::array<la::Vec3, 4> feet_control(const FootRefs& refs, const std::array<la::Vec3, 4>& of_w,
                                     const std::array<la::Vec3, 4>& dof_w,
                                     const model::RobotParams& rp);

// Gait bookkeeping.  The phase clock is an integer tick count multiplied out
// to seconds on use, so repeated runs are bit-identical.
struct GaitState {
  long n = 0;  // ticks since the period started
  double T = 0;
  double beta = 0;
  double T_sw = 0;
  ShadowPose pinned;  // where the workspaces were pinned at period start
  std::array<int, 4> order = schedule_row(Motion::kForwards);
  bool idle = true;
};

// Everything the rest of the loop needs from one feet-manager tick.
struct FeetOutput {
  FootRefs refs;
  std::array<la::Vec3, 4> ddof_cmd{};  // foot accelerations after the PD
  WheelState wheels;
  std::array<Footholds, 4> holds{};
  std::array<double, 4> t0{};  // lift-off instants per leg
  double T = 0;
  double beta = 0;
  double T_sw = 0;
  double clock = 0;
  std::array<int, 4> order{};
  bool rollover = false;
  bool idle = false;
  bool clamped = false;
};

class FeetManager {
 public:
  FeetManager(const model::RobotParams& rp, const la::Vec6& q0_init);

  FeetOutput tick(const CommandSet& cmds, const ModelData& md);

  const GaitState& gait() const { return gs_; }

 private:
  model::RobotParams rp_;
  GaitState gs_;
  std::array<la::Vec3, 4> idle_pos_{};  // foot rest positions while idling
};

}  // namespace quadloc::control
