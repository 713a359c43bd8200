#include "quadloc/sim/loop.hpp"

#include <chrono>
#include <cmath>

#include "quadloc/error.hpp"
#include "quadloc/model/kinematics.hpp"

namespace quadloc::sim {

namespace {

model::RobotParams with_rate(const model::RobotParams& rp, const LoopOptions& opt) {
  model::RobotParams out = rp;
  if (opt.rate_hz > 0) out.T_s = 1.0 / opt.rate_hz;
  return out;
}

}  // namespace

la::Vec6 initial_pose(const model::RobotParams& rp) {
  const auto kin = model::leg_forward_kinematics(rp, 0, rp.q_stance[0]);
  return la::vec6(0, 0, rp.zeta - kin.ge[2], 0, 0, 0);
}

SimulationLoop::SimulationLoop(const model::RobotParams& rp, const Scenario& sc,
                               const LoopOptions& opt)
    : rp_(with_rate(rp, opt)),
      sc_(sc),
      opt_(opt),
      plant_(rp_),
      feet_(rp_, initial_pose(rp_)),
      ref_(rp_, initial_pose(rp_)),
      body_(rp_, initial_pose(rp_), rp_.q_stance) {
  plant_.set_perturbation(opt_.perturbation);
  const double duration = opt_.duration > 0 ? opt_.duration : sc_.duration;
  total_ticks_ = std::llround(duration / rp_.T_s);
  refresh_model_data();
}

void SimulationLoop::refresh_model_data() {
  md_.q0 = body_.state().q0;
  md_.V = body_.state().V;
  md_.q = plant_.joints();
  const la::Mat3 R = model::body_rotation(md_.q0);
  const la::Vec3 og = la::vec3(md_.q0[0], md_.q0[1], md_.q0[2]);
  for (int i = 0; i < 4; ++i) {
    const auto kin = model::leg_forward_kinematics(rp_, i, md_.q[i]);
    const auto fp = model::foot_point(og, R, kin.ge, rp_.zeta);
    md_.of_w[i] = fp.of_w;
    md_.gf_0[i] = fp.gf_0;
    md_.dof_w[i] = model::foot_point_velocity(R, fp.gf_0, md_.V, body_.state().dgf[i]);
  }
  md_.sigma = detect_contacts(md_.of_w, rp_.contact_threshold);
}

TickData SimulationLoop::step() {
  using clock = std::chrono::steady_clock;

  TickData row;
  row.t = static_cast<double>(n_) * rp_.T_s;
  row.sigma = md_.sigma;
  row.N = md_.grounded_count();
  row.of_w = md_.of_w;

  const control::CommandSet cmds = sc_.sample(row.t);
  try {
    clock::time_point begin{};
    if (opt_.timing) begin = clock::now();

    feet_out_ = feet_.tick(cmds, md_);
    refs_ = ref_.tick(cmds, md_);
    const auto out = body_.step(md_, refs_, feet_out_.ddof_cmd);

    if (opt_.timing)
      row.duration_ns =
          std::chrono::duration_cast<std::chrono::nanoseconds>(clock::now() - begin).count();

    row.r = out.r;
    row.iterations = out.iterations;

    plant_.integrate_joints(out.qdot_cmd);
    refresh_model_data();

    row.q0 = md_.q0;
    row.q0_ref = la::vec6(refs_.og_star[0], refs_.og_star[1], refs_.og_star[2], cmds.phi,
                          cmds.theta, ref_.psi_ref());
    const la::Vec6 dq0 = model::body_jacobian_inverse(md_.q0) * md_.V;
    row.v_fw = md_.V[0];
    row.v_lw = md_.V[1];
    row.dpsi = dq0[5];
  } catch (const Error& e) {
    throw RuntimeFault(n_, e.what());
  }
  row.v_fw_ref = cmds.v_fw;
  row.v_lw_ref = cmds.v_lw;
  row.dpsi_ref = cmds.dpsi;
  row.T = feet_out_.T;
  row.beta = feet_out_.beta;
  row.clock = feet_out_.clock;

  ++n_;
  return row;
}

std::vector<TickData> SimulationLoop::run() {
  std::vector<TickData> rows;
  rows.reserve(static_cast<std::size_t>(total_ticks_));
  for (long i = 0; i < total_ticks_; ++i) rows.push_back(step());
  return rows;
}

}  // namespace quadloc::sim
