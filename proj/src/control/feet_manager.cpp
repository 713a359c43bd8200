#include "quadloc/control/feet_manager.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace quadloc::control {

namespace {

constexpr double kPi = std::numbers::pi;

// Time until `p` moving at `u` leaves [lo, hi] along one axis.
double axis_exit(double p, double u, double lo, double hi) {
  if (u > 0.0) return (hi - p) / u;
  if (u < 0.0) return (lo - p) / u;
  return std::numeric_limits<double>::infinity();
}

}  // namespace

WheelState wheel_commands(const CommandSet& cmds, const la::Vec6& q0,
                          const std::array<la::Vec3, 4>& gw) {
  const la::Mat3 Rz = la::rot_z(q0[5]);
  const la::Mat3 tilt = la::rot_y(q0[4]) * la::rot_x(q0[3]);
  const la::Vec3 o_xy = la::vec3(q0[0], q0[1], 0.0);
  const la::Vec3 v_cmd = la::vec3(cmds.v_fw, cmds.v_lw, 0.0);
  const la::Vec3 k = la::vec3(0.0, 0.0, 1.0);

  WheelState ws;
  for (int i = 0; i < 4; ++i) {
    const la::Vec3 tilted = tilt * gw[i];
    ws.kw_s[i] = la::vec3(tilted[0], tilted[1], 0.0);
    ws.ow[i] = o_xy + Rz * ws.kw_s[i];
    ws.u_s[i] = v_cmd + cmds.dpsi * la::cross(k, ws.kw_s[i]);
    ws.dow[i] = Rz * ws.u_s[i];
  }
  return ws;
}

Footholds footholds(const la::Vec3& ow, const la::Vec3& dow, double t, double T) {
  return {ow - t * dow, ow + (T - t) * dow};
}

PeriodResult compute_period(const WheelState& wheels, const ShadowPose& pinned, double t,
                            const model::RobotParams& rp) {
  const double c = std::cos(pinned.psi);
  const double s = std::sin(pinned.psi);

  PeriodResult out;
  double T = rp.period_max();
  for (int i = 0; i < 4; ++i) {
    const model::Workspace& w = rp.workspace[i];
    // Current wheel position and velocity seen from the pinned frame.
    const double dx = wheels.ow[i][0] - pinned.x;
    const double dy = wheels.ow[i][1] - pinned.y;
    const double x = std::clamp(c * dx + s * dy, w.x_min, w.x_max);
    const double y = std::clamp(-s * dx + c * dy, w.y_min, w.y_max);
    const double ux = c * wheels.dow[i][0] + s * wheels.dow[i][1];
    const double uy = -s * wheels.dow[i][0] + c * wheels.dow[i][1];
    const double exit = std::min(axis_exit(x, ux, w.x_min, w.x_max),
                                 axis_exit(y, uy, w.y_min, w.y_max));
    T = std::min(T, t + exit);
  }
  if (T < rp.period_min()) {
    T = rp.period_min();
    out.clamped = true;
  }
  out.T = T;
  if (T >= rp.period_mid()) {
    out.beta = rp.beta_max;
    out.T_sw = (1.0 - rp.beta_max) * T;
  } else {
    out.T_sw = rp.T_sw_min;
    out.beta = 1.0 - rp.T_sw_min / T;
  }
  return out;
}

std::array<int, 4> schedule_row(Motion m) {
  switch (m) {
    case Motion::kForwards:
      return {0, 3, 1, 2};
    case Motion::kBackwards:
      return {0, 2, 1, 3};
    case Motion::kLeftwards:
      return {0, 3, 2, 1};
    case Motion::kRightwards:
      return {0, 1, 2, 3};
    case Motion::kCcw:
      return {0, 2, 3, 1};
    case Motion::kCw:
      return {0, 1, 3, 2};
  }
  return {0, 3, 1, 2};
}

std::array<int, 4> select_gait_schedule(const CommandSet& cmds, const WheelState& wheels,
                                        const std::array<int, 4>& previous) {
  if (!cmds.moving()) return previous;

  const la::Vec3 u_front = 0.5 * (wheels.u_s[0] + wheels.u_s[1]);
  const la::Vec3 u_rear = 0.5 * (wheels.u_s[2] + wheels.u_s[3]);
  if (u_front[0] * u_rear[0] + u_front[1] * u_rear[1] <= 0.0)
    return schedule_row(cmds.dpsi > 0.0 ? Motion::kCcw : Motion::kCw);

  const double a = std::atan2(cmds.v_lw, cmds.v_fw);
  const double a_fl = std::atan2(wheels.kw_s[0][1], wheels.kw_s[0][0]);
  const double a_fr = std::atan2(wheels.kw_s[1][1], wheels.kw_s[1][0]);
  const double a_rl = std::atan2(wheels.kw_s[2][1], wheels.kw_s[2][0]);
  const double a_rr = std::atan2(wheels.kw_s[3][1], wheels.kw_s[3][0]);
  if (a >= a_fr && a < a_fl) return schedule_row(Motion::kForwards);
  if (a >= a_fl && a < a_rl) return schedule_row(Motion::kLeftwards);
  if (a >= a_rr && a < a_fr) return schedule_row(Motion::kRightwards);
  return schedule_row(Motion::kBackwards);
}

std::array<double, 4> lift_off_times(const std::array<int, 4>& order, double T, double T_sw) {
  const std::array<double, 4> slot = {0.0, 0.5 * T - T_sw, 0.5 * T, T - T_sw};
  std::array<double, 4> t0{};
  for (int s = 0; s < 4; ++s) t0[order[s]] = slot[s];
  return t0;
}

FootRef swing_reference(const Footholds& fh, double t0, double T_sw, double h, double t) {
  FootRef out;
  if (t < t0) {
    out.pos = fh.start;
    return out;
  }
  if (t >= t0 + T_sw) {
    out.pos = fh.end;
    return out;
  }

  const la::Vec3 span = fh.end - fh.start;
  const la::Vec3 lift = la::vec3(0.0, 0.0, h);
  const double s = (t - t0) / T_sw;
  const double eta = 2.0 * kPi * (3.0 * s * s - 2.0 * s * s * s);
  const double deta = 12.0 * kPi * s * (1.0 - s) / T_sw;
  const double ddeta = 12.0 * kPi * (1.0 - 2.0 * s) / (T_sw * T_sw);
  const double sn = std::sin(eta);
  const double cs = std::cos(eta);

  const la::Vec3 d_eta = ((1.0 - cs) / (2.0 * kPi)) * span + (0.5 * sn) * lift;
  const la::Vec3 d2_eta = (sn / (2.0 * kPi)) * span + (0.5 * cs) * lift;
  out.pos = fh.start + ((eta - sn) / (2.0 * kPi)) * span + (0.5 * (1.0 - cs)) * lift;
  out.vel = deta * d_eta;
  out.acc = ddeta * d_eta + (deta * deta) * d2_eta;
  out.swing = 1;
  return out;
}

std::array<la::Vec3, 4> feet_control(const FootRefs& refs, const std::array<la::Vec3, 4>& of_w,
                                     const std::array<la::Vec3, 4>& dof_w,
                                     const model::RobotParams& rp) {
  std::array<la::Vec3, 4> dd{};
  for (int i = 0; i < 4; ++i)
    dd[i] = refs.acc[i] + rp.k_p_feet[i] * (refs.pos[i] - of_w[i]) +
            rp.k_d_feet[i] * (refs.vel[i] - dof_w[i]);
  return dd;
}

FeetManager::FeetManager(const model::RobotParams& rp, const la::Vec6& q0_init) : rp_(rp) {
  const WheelState ws = wheel_commands(CommandSet{}, q0_init, rp_.gw);
  idle_pos_ = ws.ow;
  gs_.pinned = {q0_init[0], q0_init[1], q0_init[5]};
  gs_.T = rp_.period_max();
  gs_.beta = rp_.beta_max;
  gs_.T_sw = (1.0 - rp_.beta_max) * gs_.T;
}

FeetOutput FeetManager::tick(const CommandSet& cmds, const ModelData& md) {
  FeetOutput out;
  out.wheels = wheel_commands(cmds, md.q0, rp_.gw);
  const bool moving = cmds.moving();

  if (gs_.idle && moving) {
    gs_.idle = false;
    gs_.n = 0;
  }

  double t = static_cast<double>(gs_.n) * rp_.T_s;
  PeriodResult pr = compute_period(out.wheels, gs_.pinned, t, rp_);

  if (t >= pr.T) {
    gs_.n = 0;
    t = 0.0;
  }
  out.rollover = (gs_.n == 0);
  if (out.rollover) {
    // A new period starts here: re-pin the workspaces under the body and
    // recompute the period against them.
    gs_.pinned = {md.q0[0], md.q0[1], md.q0[5]};
    pr = compute_period(out.wheels, gs_.pinned, 0.0, rp_);
    gs_.order = select_gait_schedule(cmds, out.wheels, gs_.order);
    if (!moving && !gs_.idle) {
      gs_.idle = true;
      idle_pos_ = out.wheels.ow;
    }
  }
  gs_.T = pr.T;
  gs_.beta = pr.beta;
  gs_.T_sw = pr.T_sw;

  out.t0 = lift_off_times(gs_.order, gs_.T, gs_.T_sw);
  for (int i = 0; i < 4; ++i) {
    out.holds[i] = footholds(out.wheels.ow[i], out.wheels.dow[i], t, gs_.T);
    if (gs_.idle) {
      out.refs.pos[i] = idle_pos_[i];
      out.refs.vel[i] = la::Vec3{};
      out.refs.acc[i] = la::Vec3{};
      out.refs.swing[i] = 0;
    } else {
      const FootRef fr = swing_reference(out.holds[i], out.t0[i], gs_.T_sw, rp_.h_swing, t);
      out.refs.pos[i] = fr.pos;
      out.refs.vel[i] = fr.vel;
      out.refs.acc[i] = fr.acc;
      out.refs.swing[i] = fr.swing;
    }
  }
  out.ddof_cmd = feet_control(out.refs, md.of_w, md.dof_w, rp_);

  out.T = gs_.T;
  out.beta = gs_.beta;
  out.T_sw = gs_.T_sw;
  out.clock = t;
  out.order = gs_.order;
  out.idle = gs_.idle;
  out.clamped = pr.clamped;
  if (!gs_.idle) gs_.n += 1;
  return out;
}

}  // namespace quadloc::control
