// Acceptance gate: one line per criterion, nonzero exit if any fails.
//
// Each criterion exercises the stack end to end against pinned tolerances:
// the two bundled tours for tracking, randomized suites for the
// factorization and the stance rank table, boundary checks for the swing
// references, a closed-form oracle for the pose loop, per-tick clamp
// invariants, and bit-exact determinism of repeated runs.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <map>
#include <numbers>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "quadloc/control/body_manager.hpp"
#include "quadloc/control/feet_manager.hpp"
#include "quadloc/error.hpp"
#include "quadloc/la/decompose.hpp"
#include "quadloc/la/matrix.hpp"
#include "quadloc/model/dynamics.hpp"
#include "quadloc/model/kinematics.hpp"
#include "quadloc/model/robot_params.hpp"
#include "quadloc/model/support.hpp"
#include "quadloc/sim/loop.hpp"
#include "quadloc/sim/report.hpp"
#include "quadloc/sim/scenario.hpp"
#include "support/oracles.hpp"
#include "support/rng.hpp"
#include "testdata.hpp"

using namespace quadloc;
using testsupport::Rng;

namespace {

constexpr double kPi = std::numbers::pi;

int g_failures = 0;

std::string fmt(const char* f, ...) {
  char buf[768];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

void report(int idx, const char* name, bool pass, const std::string& detail) {
  std::printf("criterion %d: %-28s %s  (%s)\n", idx, name, pass ? "PASS" : "FAIL", detail.c_str());
  if (!pass) ++g_failures;
}

template <typename F>
void criterion(int idx, const char* name, F&& fn) {
  try {
    auto [pass, detail] = fn();
    report(idx, name, pass, detail);
  } catch (const std::exception& e) {
    report(idx, name, false, fmt("exception: %s", e.what()));
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct TourRun {
  std::vector<sim::TickData> rows;
  bool fault = false;
  std::string fault_msg;
  double wall = 0;
};

TourRun run_tour(const model::RobotParams& rp, const sim::Scenario& sc) {
  TourRun r;
  sim::SimulationLoop loop(rp, sc, {});
  const auto t0 = std::chrono::steady_clock::now();
  try {
    r.rows = loop.run();
  } catch (const RuntimeFault& e) {
    r.fault = true;
    r.fault_msg = e.what();
  }
  r.wall = seconds_since(t0);
  return r;
}

// Worst pose-tracking errors against the unclamped reference.
struct PoseMax {
  double xy = 0, z = 0, ang = 0;
};

PoseMax pose_maxima(const sim::Summary& s) {
  PoseMax m;
  m.xy = std::max(s.overall.pose[0].max_abs, s.overall.pose[1].max_abs);
  m.z = s.overall.pose[2].max_abs;
  m.ang = std::max({s.overall.pose[3].max_abs, s.overall.pose[4].max_abs, s.overall.pose[5].max_abs});
  return m;
}

// Random wide matrix of exact rank r as a product of full-rank factors.
la::Mat<6, 12> random_rank(Rng& rng, int r) {
  if (r == 0) return la::Mat<6, 12>(6, 12);
  return rng.matrix<6, 6>(6, r) * rng.matrix<6, 12>(r, 12);
}

long expected_iterations(int n, int r) {
  return static_cast<long>(n) * r - static_cast<long>(r) * (r - 1) / 2;
}

// Standing fixture: nominal joints, body at the height that grounds the feet.
struct Standing {
  la::Vec6 q0;
  std::array<la::Vec3, 4> q;
  control::ModelData md;
};

Standing standing(const model::RobotParams& rp) {
  Standing s;
  s.q = rp.q_stance;
  const auto leg0 = model::leg_forward_kinematics(rp, 0, s.q[0]);
  s.q0 = la::vec6(0, 0, rp.zeta - leg0.ge[2], 0, 0, 0);
  for (int i = 0; i < 4; ++i) {
    s.md.sigma[i] = 1;
    s.md.q[i] = s.q[i];
  }
  s.md.q0 = s.q0;
  return s;
}

bool same_rows(const std::vector<sim::TickData>& a, const std::vector<sim::TickData>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& x = a[i];
    const auto& y = b[i];
    if (x.t != y.t || x.N != y.N || x.r != y.r || x.T != y.T || x.beta != y.beta ||
        x.clock != y.clock || x.duration_ns != y.duration_ns || x.iterations != y.iterations)
      return false;
    if (x.v_fw != y.v_fw || x.v_lw != y.v_lw || x.dpsi != y.dpsi || x.v_fw_ref != y.v_fw_ref ||
        x.v_lw_ref != y.v_lw_ref || x.dpsi_ref != y.dpsi_ref)
      return false;
    for (int k = 0; k < 6; ++k)
      if (x.q0[k] != y.q0[k] || x.q0_ref[k] != y.q0_ref[k]) return false;
    for (int f = 0; f < 4; ++f) {
      if (x.sigma[f] != y.sigma[f]) return false;
      for (int k = 0; k < 3; ++k)
        if (x.of_w[f][k] != y.of_w[f][k]) return false;
    }
  }
  return true;
}

// --- criterion bodies -------------------------------------------------------

std::pair<bool, std::string> slow_tour_tracking(const model::RobotParams& rp,
                                                const sim::Scenario& sc) {
  const TourRun r = run_tour(rp, sc);
  if (r.fault) return {false, fmt("faulted: %s", r.fault_msg.c_str())};
  const auto s = sim::summarize(r.rows, sc, rp.T_s);
  const PoseMax m = pose_maxima(s);
  const double ang_bound = 0.2 * kPi;
  const bool pass = m.xy <= 0.04 && m.z <= 0.08 && m.ang <= ang_bound && r.wall <= 60.0;
  return {pass, fmt("xy %.2e<=4.00e-02, z %.2e<=8.00e-02, ang %.2e<=%.2e, wall %.1fs<=60s",
                    m.xy, m.z, m.ang, ang_bound, r.wall)};
}

std::pair<bool, std::string> fast_tour_tracking(const model::RobotParams& rp,
                                                const sim::Scenario& sc) {
  const TourRun r = run_tour(rp, sc);
  if (r.fault) return {false, fmt("faulted: %s", r.fault_msg.c_str())};
  const auto s = sim::summarize(r.rows, sc, rp.T_s);
  const PoseMax m = pose_maxima(s);
  int min_n = 4;
  double cap_v = 0, cap_w = 0;
  for (const auto& row : r.rows) {
    min_n = std::min(min_n, row.N);
    cap_v = std::max(cap_v, row.v_fw_ref);
    cap_w = std::max(cap_w, std::abs(row.dpsi_ref));
  }
  const bool caps = cap_v >= 1.0 - 1e-12 && cap_w >= 0.75 * kPi - 1e-12;
  const bool pass = m.xy <= 0.10 && m.z <= 0.20 && min_n >= 2 && caps;
  return {pass, fmt("xy %.2e<=1.00e-01, z %.2e<=2.00e-01, min N %d>=2, caps %.3f m/s %.3f rad/s",
                    m.xy, m.z, min_n, cap_v, cap_w)};
}

std::pair<bool, std::string> decomposition_suite() {
  Rng rng(7);
  const auto t0 = std::chrono::steady_clock::now();
  double worst_recon = 0, worst_orth = 0;
  long iteration_misses = 0;
  for (int r : {0, 3, 5, 6}) {
    for (int trial = 0; trial < 1000; ++trial) {
      const auto x = random_rank(rng, r);
      const auto f = la::ldq_decompose<6, 12>(x, r);
      worst_recon = std::max(worst_recon, la::max_abs(la::ldq_reconstruct(f) - x));
      if (r > 0) {
        const auto qqt = f.Q * f.Q.transposed();
        worst_orth = std::max(worst_orth, la::max_abs(qqt - la::Mat<6, 6>::identity(r)));
      }
      if (f.iterations != expected_iterations(6, r)) ++iteration_misses;
    }
  }
  const double wall = seconds_since(t0);
  const bool pass =
      worst_recon <= 1e-9 && worst_orth <= 1e-9 && iteration_misses == 0 && wall <= 5.0;
  return {pass, fmt("4000 instances: recon %.2e<=1e-09, QQt %.2e<=1e-09, "
                    "iteration misses %ld, wall %.2fs<=5s",
                    worst_recon, worst_orth, iteration_misses, wall)};
}

std::pair<bool, std::string> stance_rank_table() {
  Rng rng(11);
  long mismatches = 0;
  for (int n_feet = 0; n_feet <= 4; ++n_feet) {
    for (int trial = 0; trial < 1000; ++trial) {
      std::array<int, 4> feet = {0, 1, 2, 3};
      for (int i = 3; i > 0; --i)
        std::swap(feet[i], feet[rng.next_u64() % static_cast<std::uint64_t>(i + 1)]);
      std::array<int, 4> sigma{};
      for (int k = 0; k < n_feet; ++k) sigma[feet[k]] = 1;
      std::array<la::Vec3, 4> gf{};
      for (int i = 0; i < 4; ++i)
        gf[i] = la::vec3(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5), rng.uniform(-0.45, -0.1));
      const auto a = model::constraint_matrix(sigma, gf);
      if (testsupport::numeric_rank(a, 1e-8) != model::kStanceRank[n_feet]) ++mismatches;
    }
  }
  return {mismatches == 0,
          fmt("5000 stances vs Gram-eigenvalue oracle at 1e-08: %ld mismatches "
              "of table {0,3,5,6,6}",
              mismatches)};
}

std::pair<bool, std::string> swing_boundary_conditions(const model::RobotParams& rp,
                                                       const sim::Scenario& sc) {
  sim::SimulationLoop loop(rp, sc, {});
  double worst = 0;
  long samples = 0;
  for (long n = 0; n < loop.total_ticks(); ++n) {
    loop.step();
    const auto& fo = loop.last_feet();
    if (fo.idle || fo.T_sw <= 0) continue;
    for (int i = 0; i < 4; ++i) {
      const double td = fo.t0[i] + fo.T_sw;
      const std::array<double, 4> probes = {fo.t0[i], std::nextafter(fo.t0[i], td),
                                            std::nextafter(td, fo.t0[i]), td};
      for (double t : probes) {
        const auto fr = control::swing_reference(fo.holds[i], fo.t0[i], fo.T_sw, rp.h_swing, t);
        worst = std::max({worst, la::max_abs(fr.vel), la::max_abs(fr.acc)});
        ++samples;
      }
    }
  }
  return {worst <= 1e-9 && samples > 0,
          fmt("%ld lift-off/touch-down samples: peak |vel|,|acc| %.2e<=1e-09", samples, worst)};
}

std::pair<bool, std::string> pose_loop_linearization(const model::RobotParams& rp) {
  if (rp.k_p_body != 100.0 || rp.k_d_body != 21.0)
    return {false, fmt("gains %g/%g differ from the pinned 100/21", rp.k_p_body, rp.k_d_body)};

  const Standing s = standing(rp);
  la::Vec6 target = s.q0;
  target[2] += 0.01;   // height error
  target[4] += 0.02;   // pitch error

  control::BodyRefs refs;
  refs.q0_star = target;
  refs.og_star = la::vec3(target[0], target[1], target[2]);

  control::BodyManager bm(rp, s.q0, s.q);
  control::ModelData md = s.md;

  // e'' + k_d e' + k_p e = 0 from e(0) = e0, e'(0) = 0: both roots real.
  const double disc = std::sqrt(rp.k_d_body * rp.k_d_body - 4.0 * rp.k_p_body);
  const double l1 = 0.5 * (-rp.k_d_body + disc);
  const double l2 = 0.5 * (-rp.k_d_body - disc);
  double worst = 0;
  for (int n = 0; n < 200; ++n) {
    bm.step(md, refs, {});
    md.q = bm.state().q;
    const double t = (n + 1) * rp.T_s;
    const double decay =
        (-l2 * std::exp(l1 * t) + l1 * std::exp(l2 * t)) / (l1 - l2);
    worst = std::max(worst, std::abs((target[2] - bm.state().q0[2]) - 0.01 * decay));
    worst = std::max(worst, std::abs((target[4] - bm.state().q0[4]) - 0.02 * decay));
  }
  return {worst <= 1e-3, fmt("2s closed-form match, gains 100/21: peak dev %.2e<=1e-03", worst)};
}

std::pair<bool, std::string> stability_clamp(const model::RobotParams& rp,
                                             const std::vector<sim::Scenario>& tours) {
  long membership_misses = 0, flight_ticks = 0, ticks = 0;
  double worst_roundtrip = 0, worst_outside = 0;
  for (const auto& sc : tours) {
    sim::SimulationLoop loop(rp, sc, {});
    for (long n = 0; n < loop.total_ticks(); ++n) {
      const sim::TickData row = loop.step();
      const auto& refs = loop.last_refs();
      ++ticks;
      if (refs.flight) {
        ++flight_ticks;
        continue;
      }
      const auto poly = model::support_polygon(row.sigma, row.of_w);
      if (!poly.contains(refs.oz_clamped, 1e-12)) {
        ++membership_misses;
        worst_outside = std::max(worst_outside, la::norm(refs.oz_clamped - poly.closest_point(refs.oz_clamped)));
      }

      // Re-derive the reference wrench and close the loop: the body position
      // solved from the clamped point must map back onto it.
      const auto cmds = sc.sample(row.t);
      const double psi = refs.q0_star[5];
      const la::Mat3 R = model::body_rotation(cmds.phi, cmds.theta, psi);
      const la::Vec3 omega =
          model::euler_rate_map(cmds.phi, cmds.theta) * la::vec3(0.0, 0.0, cmds.dpsi);
      const la::Vec3 v_world = la::rot_z(psi) * la::vec3(cmds.v_fw, cmds.v_lw, 0.0);
      model::BodyWrench wrench;
      wrench.force = rp.m * la::cross(omega, R.transposed() * v_world);
      wrench.moment = la::cross(omega, rp.I_g * omega);
      const la::Vec3 force_g0 = R.transposed() * la::vec3(0.0, 0.0, -rp.m * rp.g);
      const la::Vec3 og_safe = la::vec3(refs.q0_star[0], refs.q0_star[1], refs.q0_star[2]);
      const la::Vec3 zmp = model::zero_moment_point(og_safe, R, wrench, force_g0);
      worst_roundtrip = std::max(worst_roundtrip, la::norm(zmp - refs.oz_clamped));
    }
  }
  const bool pass = membership_misses == 0 && flight_ticks == 0 && worst_roundtrip <= 1e-9;
  return {pass, fmt("%ld ticks over %zu scenarios: %ld outside hull at 1e-12, "
                    "round-trip %.2e<=1e-09",
                    ticks, tours.size(), membership_misses, worst_roundtrip)};
}

std::pair<bool, std::string> determinism(const model::RobotParams& rp,
                                         const std::vector<sim::Scenario>& tours) {
  int identical = 0;
  std::map<int, std::set<long>> iterations_by_n;
  for (const auto& sc : tours) {
    const TourRun a = run_tour(rp, sc);
    const TourRun b = run_tour(rp, sc);
    if (!a.fault && !b.fault && same_rows(a.rows, b.rows)) ++identical;
    for (const auto& row : a.rows) iterations_by_n[row.N].insert(row.iterations);
  }

  // Wall-clock figures vary by host, so the repeatability claim is pinned to
  // the pivot-scan operation counts instead.
  bool counts_ok = true;
  for (const auto& [n, vals] : iterations_by_n) counts_ok = counts_ok && vals.size() == 1;
  auto value_of = [&](int n) -> long {
    auto it = iterations_by_n.find(n);
    return it == iterations_by_n.end() || it->second.empty() ? -1 : *it->second.begin();
  };
  counts_ok = counts_ok && value_of(2) == 20 && value_of(3) == 21 && value_of(4) == 21;

  const bool pass = identical == static_cast<int>(tours.size()) && counts_ok;
  return {pass, fmt("%d/%zu reruns bit-identical; pivot scans per contact count "
                    "{2:%ld 3:%ld 4:%ld}, constant %s",
                    identical, tours.size(), value_of(2), value_of(3), value_of(4),
                    counts_ok ? "yes" : "no")};
}

}  // namespace

int main() {
  const auto rp = model::load_robot_params(testdata::path("go2.params"));
  const auto slow = sim::load_scenario(testdata::path("scenarios/slow_tour.scn"));
  const auto fast = sim::load_scenario(testdata::path("scenarios/fast_tour.scn"));
  const auto still = sim::load_scenario(testdata::path("scenarios/standstill.scn"));
  const std::vector<sim::Scenario> tours = {still, slow, fast};

  criterion(1, "slow-tour tracking", [&] { return slow_tour_tracking(rp, slow); });
  criterion(2, "fast-tour tracking", [&] { return fast_tour_tracking(rp, fast); });
  criterion(3, "decomposition suite", [&] { return decomposition_suite(); });
  criterion(4, "stance rank table", [&] { return stance_rank_table(); });
  criterion(5, "swing boundary conditions", [&] { return swing_boundary_conditions(rp, slow); });
  criterion(6, "pose-loop linearization", [&] { return pose_loop_linearization(rp); });
  criterion(7, "stability clamp", [&] { return stability_clamp(rp, tours); });
  criterion(8, "determinism", [&] { return determinism(rp, tours); });

  if (g_failures == 0) {
    std::printf("acceptance: all 8 criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d of 8 criteria FAILED\n", g_failures);
  return 1;
}
