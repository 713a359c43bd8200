#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "quadloc/sim/loop.hpp"
#include "quadloc/sim/scenario.hpp"

namespace quadloc::sim {

// Fixed trace header; doubles are written with %.17g so values round-trip.
extern const char* const kTraceHeader;

void write_trace(const std::string& path, const std::vector<TickData>& rows);

struct CoordStats {
  double max_abs = 0;
  double mean_abs = 0;
};

// Pose-coordinate order everywhere: x, y, z, phi, theta, psi.
struct SegmentStats {
  double t_start = 0;
  double t_end = 0;
  long ticks = 0;
  std::array<CoordStats, 6> pose;
};

struct TimingBucket {
  long ticks = 0;
  std::int64_t min_ns = 0, p50_ns = 0, p90_ns = 0, p99_ns = 0, max_ns = 0;
  std::vector<long> iteration_values;  // distinct per-tick decomposition counts
  bool iterations_constant = true;
};

struct Summary {
  long ticks = 0;
  double duration = 0;
  SegmentStats overall;
  std::vector<SegmentStats> segments;
  std::map<int, TimingBucket> per_n;  // keyed by grounded-feet count
};

// Tracking errors are measured against the unclamped reference; the yaw error
// is wrapped to (-pi, pi].
Summary summarize(const std::vector<TickData>& rows, const Scenario& sc, double T_s);

std::string summary_to_json(const Summary& s);
void print_summary(const Summary& s, std::ostream& out);

}  // namespace quadloc::sim
