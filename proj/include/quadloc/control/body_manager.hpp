#pragma once

#include <array>

#include "quadloc/control/body_reference.hpp"
#include "quadloc/control/types.hpp"
#include "quadloc/la/decompose.hpp"
#include "quadloc/la/matrix.hpp"
#include "quadloc/model/kinematics.hpp"
#include "quadloc/model/robot_params.hpp"

namespace quadloc::control {

using Vec12 = la::Mat<12, 1>;

// Everything derived from one contact configuration: the thin LDQ of the
// stacked constraint transpose and the twist-dynamics operators built on it.
struct DecompositionCache {
  la::ThinLdq<6, 12> ldq;
  int r = 0;
  la::Mat<6, 6> PL;        // permuted unit-lower factor, 6 x r
  la::Mat<6, 6> Lambda;    // drift propagator of the uncontrollable motions
  la::Mat<6, 6> PsiDinv;   // input map of the controllable motions, 6 x r
  la::Vec6 h_V;            // twist drift (gravity + gyroscopic)
  Vec12 h_feet;            // stacked per-foot constraint drift
  la::Vec6 f_V;            // twist derivative with zero control input
};

// State owned by the internal dynamical model.
struct InternalState {
  la::Vec6 q0;                    // body pose
  la::Vec6 V;                     // body twist, body frame
  std::array<la::Vec3, 4> q{};    // joint angles (reconciled with the plant)
  std::array<la::Vec3, 4> dgf{};  // foot point velocities, body frame
};

// Builds the constraint matrix for the given contacts, factors it, and
// assembles the operators that split the twist dynamics into drift and
// controllable input.  The expected rank comes from the grounded-feet count;
// a degenerate stance surfaces as RankDeficientError.
DecompositionCache refresh_decomposition(const std::array<int, 4>& sigma,
                                         const std::array<la::Vec3, 4>& gf_0,
                                         const model::RobotParams& rp, const la::Mat3& R,
                                         const la::Vec6& V, const std::array<la::Vec3, 4>& dgf_0);

// Feedback-linearizing pose control projected into the controllable motions.
// Returns the r-vector of projected foot accelerations.
la::Mat<6, 1> body_control(const BodyRefs& refs, const la::Vec6& q0, const la::Vec6& dq0,
                           const la::Mat6& J, const la::Mat6& dJ, const DecompositionCache& cache,
                           const model::RobotParams& rp);

struct ManagerOutput {
  std::array<la::Vec3, 4> qdot_cmd{};  // joint velocity commands
  int r = 0;
  long iterations = 0;                 // decomposition pivot-scan count
  la::Mat<6, 1> u_V{0, 1};
  double constraint_residual = 0;      // max |A V + dgf| over grounded feet, post step
};

// The low-level body pipeline: per tick it reconciles measurements, factors
// the contact constraint, runs the pose controller, advances the internal
// dynamical model one step, and emits joint velocity commands.
class BodyManager {
 public:
  BodyManager(const model::RobotParams& rp, const la::Vec6& q0_init,
              const std::array<la::Vec3, 4>& q_init);

  // `md` supplies the measured joint angles and contact flags; `ddof_w` the
  // world-frame foot acceleration commands.
  ManagerOutput step(const ModelData& md, const BodyRefs& refs,
                     const std::array<la::Vec3, 4>& ddof_w);

  const InternalState& state() const { return st_; }

  // Advances the internal model only (fixed contacts, no measurement
  // reconciliation): one semi-implicit Euler step under the given inputs.
  void step_internal_model(const DecompositionCache& cache,
                           const std::array<model::LegKin, 4>& legs, const la::Mat<6, 1>& u_V,
                           const std::array<la::Vec3, 4>& ddof_w,
                           std::array<la::Vec3, 4>* qdot_cmd);

 private:
  model::RobotParams rp_;
  la::Mat6 Minv_;
  InternalState st_;
};

// Inverse velocity map of one leg: joint rates realizing the body-frame foot
// point velocity `dgf` given the sphere-centre correction.
la::Vec3 joint_velocity_command(const model::LegKin& leg, const la::Vec3& dgf,
                                const la::Vec3& omega, const la::Mat3& R, double zeta);

}  // namespace quadloc::control
