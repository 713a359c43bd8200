#include "quadloc/sim/report.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

#include "json.hpp"
#include "quadloc/error.hpp"
#include "quadloc/model/kinematics.hpp"

namespace quadloc::sim {

const char* const kTraceHeader =
    "t,x,y,z,phi,theta,psi,"
    "x_ref,y_ref,z_ref,phi_ref,theta_ref,psi_ref,"
    "v_fw,v_lw,dpsi,v_fw_ref,v_lw_ref,dpsi_ref,"
    "sigma1,sigma2,sigma3,sigma4,N,r,T,beta,clock,"
    "of1_x,of1_y,of1_z,of2_x,of2_y,of2_z,of3_x,of3_y,of3_z,of4_x,of4_y,of4_z,"
    "duration_ns,iterations";

void write_trace(const std::string& path, const std::vector<TickData>& rows) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw Error("cannot open trace file for writing: " + path);

  std::fprintf(f, "%s\n", kTraceHeader);
  for (const auto& r : rows) {
    std::fprintf(f, "%.17g", r.t);
    for (int i = 0; i < 6; ++i) std::fprintf(f, ",%.17g", r.q0[i]);
    for (int i = 0; i < 6; ++i) std::fprintf(f, ",%.17g", r.q0_ref[i]);
    std::fprintf(f, ",%.17g,%.17g,%.17g", r.v_fw, r.v_lw, r.dpsi);
    std::fprintf(f, ",%.17g,%.17g,%.17g", r.v_fw_ref, r.v_lw_ref, r.dpsi_ref);
    std::fprintf(f, ",%d,%d,%d,%d", r.sigma[0], r.sigma[1], r.sigma[2], r.sigma[3]);
    std::fprintf(f, ",%d,%d", r.N, r.r);
    std::fprintf(f, ",%.17g,%.17g,%.17g", r.T, r.beta, r.clock);
    for (int i = 0; i < 4; ++i)
      std::fprintf(f, ",%.17g,%.17g,%.17g", r.of_w[i][0], r.of_w[i][1], r.of_w[i][2]);
    std::fprintf(f, ",%lld,%ld\n", static_cast<long long>(r.duration_ns), r.iterations);
  }
  if (std::fclose(f) != 0) throw Error("failed to close trace file: " + path);
}

namespace {

std::array<double, 6> pose_error(const TickData& r) {
  std::array<double, 6> e;
  for (int i = 0; i < 6; ++i) e[i] = r.q0_ref[i] - r.q0[i];
  e[5] = model::wrap_angle(e[5]);
  return e;
}

void accumulate(SegmentStats* s, const std::array<double, 6>& e) {
  ++s->ticks;
  for (int i = 0; i < 6; ++i) {
    const double a = std::abs(e[i]);
    s->pose[i].max_abs = std::max(s->pose[i].max_abs, a);
    s->pose[i].mean_abs += a;  // sum for now; divided once at the end
  }
}

void finish(SegmentStats* s) {
  if (s->ticks == 0) return;
  for (auto& c : s->pose) c.mean_abs /= static_cast<double>(s->ticks);
}

std::int64_t percentile(const std::vector<std::int64_t>& sorted, double p) {
  if (sorted.empty()) return 0;
  const auto idx = static_cast<std::size_t>(p * static_cast<double>(sorted.size() - 1) + 0.5);
  return sorted[std::min(idx, sorted.size() - 1)];
}

}  // namespace

Summary summarize(const std::vector<TickData>& rows, const Scenario& sc, double T_s) {
  Summary out;
  out.ticks = static_cast<long>(rows.size());
  out.duration = static_cast<double>(rows.size()) * T_s;

  out.segments.resize(sc.segments.size());
  for (std::size_t i = 0; i < sc.segments.size(); ++i) {
    out.segments[i].t_start = sc.segments[i].t_start;
    out.segments[i].t_end =
        i + 1 < sc.segments.size() ? sc.segments[i + 1].t_start : out.duration;
  }
  out.overall.t_start = 0;
  out.overall.t_end = out.duration;

  std::map<int, std::vector<std::int64_t>> durations;
  for (const auto& r : rows) {
    const auto e = pose_error(r);
    accumulate(&out.overall, e);
    std::size_t seg = 0;
    for (std::size_t i = 0; i < sc.segments.size(); ++i)
      if (sc.segments[i].t_start <= r.t) seg = i;
    accumulate(&out.segments[seg], e);

    auto& bucket = out.per_n[r.N];
    durations[r.N].push_back(r.duration_ns);
    bool known = false;
    for (long v : bucket.iteration_values) known = known || v == r.iterations;
    if (!known) bucket.iteration_values.push_back(r.iterations);
  }

  finish(&out.overall);
  for (auto& s : out.segments) finish(&s);

  for (auto& [n, bucket] : out.per_n) {
    auto& d = durations[n];
    std::sort(d.begin(), d.end());
    bucket.ticks = static_cast<long>(d.size());
    bucket.min_ns = d.empty() ? 0 : d.front();
    bucket.max_ns = d.empty() ? 0 : d.back();
    bucket.p50_ns = percentile(d, 0.50);
    bucket.p90_ns = percentile(d, 0.90);
    bucket.p99_ns = percentile(d, 0.99);
    std::sort(bucket.iteration_values.begin(), bucket.iteration_values.end());
    bucket.iterations_constant = bucket.iteration_values.size() <= 1;
  }
  return out;
}

namespace {

const char* const kCoordNames[6] = {"x", "y", "z", "phi", "theta", "psi"};

nlohmann::json stats_json(const SegmentStats& s) {
  nlohmann::json j;
  j["t_start"] = s.t_start;
  j["t_end"] = s.t_end;
  j["ticks"] = s.ticks;
  for (int i = 0; i < 6; ++i) {
    j["error"][kCoordNames[i]] = {{"max_abs", s.pose[i].max_abs},
                                  {"mean_abs", s.pose[i].mean_abs}};
  }
  return j;
}

}  // namespace

std::string summary_to_json(const Summary& s) {
  nlohmann::json j;
  j["ticks"] = s.ticks;
  j["duration"] = s.duration;
  j["overall"] = stats_json(s.overall);
  j["segments"] = nlohmann::json::array();
  for (const auto& seg : s.segments) j["segments"].push_back(stats_json(seg));
  for (const auto& [n, b] : s.per_n) {
    nlohmann::json t;
    t["ticks"] = b.ticks;
    t["min_ns"] = b.min_ns;
    t["p50_ns"] = b.p50_ns;
    t["p90_ns"] = b.p90_ns;
    t["p99_ns"] = b.p99_ns;
    t["max_ns"] = b.max_ns;
    t["iteration_values"] = b.iteration_values;
    t["iterations_constant"] = b.iterations_constant;
    j["timing_per_N"][std::to_string(n)] = t;
  }
  return j.dump(2);
}

void print_summary(const Summary& s, std::ostream& out) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%ld ticks over %.17g s\n", s.ticks, s.duration);
  out << buf;

  auto print_stats = [&](const SegmentStats& st, const std::string& label) {
    std::snprintf(buf, sizeof buf, "  %-18s", label.c_str());
    out << buf;
    for (int i = 0; i < 6; ++i) {
      std::snprintf(buf, sizeof buf, " %s max %.3e mean %.3e%s", kCoordNames[i],
                    st.pose[i].max_abs, st.pose[i].mean_abs, i == 5 ? "\n" : " |");
      out << buf;
    }
  };

  out << "tracking error (reference minus actual):\n";
  print_stats(s.overall, "overall");
  for (std::size_t i = 0; i < s.segments.size(); ++i) {
    std::snprintf(buf, sizeof buf, "segment %zu [%g, %g)", i, s.segments[i].t_start,
                  s.segments[i].t_end);
    print_stats(s.segments[i], buf);
  }

  out << "per-N timing and decomposition iterations:\n";
  for (const auto& [n, b] : s.per_n) {
    out << "  N=" << n << " ticks=" << b.ticks << " p50=" << b.p50_ns << "ns p90=" << b.p90_ns
        << "ns p99=" << b.p99_ns << "ns max=" << b.max_ns << "ns iterations=[";
    for (std::size_t i = 0; i < b.iteration_values.size(); ++i)
      out << (i ? " " : "") << b.iteration_values[i];
    out << "]" << (b.iterations_constant ? "" : " NOT CONSTANT") << "\n";
  }
}

}  // namespace quadloc::sim
