#pragma once

#include <string>
#include <vector>

#include "quadloc/control/types.hpp"

namespace quadloc::sim {

// One command hold: the command set applies from t_start until the next
// segment starts (or the scenario ends).
struct Segment {
  double t_start = 0;
  control::CommandSet cmds;
};

struct Scenario {
  std::vector<Segment> segments;
  double duration = 0;  // seconds

  // Piecewise-constant lookup: the last segment with t_start <= t.
  const control::CommandSet& sample(double t) const;
};

// Line-oriented text:  `duration = <s>` once, then one
// `segment = t v_fw v_lw dpsi z phi theta` per command change.
// `#` starts a comment.  Segment start times must be strictly increasing and
// the first must be 0.  Raises ParseError with `origin:line:` context.
Scenario parse_scenario(const std::string& text, const std::string& origin);
Scenario load_scenario(const std::string& path);

}  // namespace quadloc::sim
