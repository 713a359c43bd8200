#include "quadloc/sim/scenario.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "quadloc/error.hpp"

namespace quadloc::sim {

namespace {

[[noreturn]] void fail(const std::string& origin, int line, const std::string& what) {
  throw ParseError(origin + ":" + std::to_string(line) + ": " + what);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  const auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

std::vector<double> numbers(const std::string& text, const std::string& origin, int line,
                            const std::string& key) {
  std::vector<double> out;
  std::istringstream vals(text);
  std::string tok;
  while (vals >> tok) {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0')
      fail(origin, line, "malformed number `" + tok + "` for key `" + key + "`");
    out.push_back(v);
  }
  return out;
}

}  // namespace

const control::CommandSet& Scenario::sample(double t) const {
  std::size_t pick = 0;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (segments[i].t_start <= t) pick = i;
  }
  return segments[pick].cmds;
}

Scenario parse_scenario(const std::string& text, const std::string& origin) {
  Scenario sc;
  bool have_duration = false;

  std::istringstream stream(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(stream, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;

    const auto eq = raw.find('=');
    if (eq == std::string::npos) fail(origin, line_no, "expected `key = value(s)`");
    const std::string key = trim(raw.substr(0, eq));
    const auto vals = numbers(raw.substr(eq + 1), origin, line_no, key);

    if (key == "duration") {
      if (have_duration) fail(origin, line_no, "duplicate key `duration`");
      if (vals.size() != 1) fail(origin, line_no, "key `duration` expects 1 value");
      if (!(vals[0] > 0)) fail(origin, line_no, "duration must be positive");
      sc.duration = vals[0];
      have_duration = true;
    } else if (key == "segment") {
      if (vals.size() != 7)
        fail(origin, line_no,
             "key `segment` expects 7 values (t v_fw v_lw dpsi z phi theta), got " +
                 std::to_string(vals.size()));
      Segment seg;
      seg.t_start = vals[0];
      seg.cmds.v_fw = vals[1];
      seg.cmds.v_lw = vals[2];
      seg.cmds.dpsi = vals[3];
      seg.cmds.z = vals[4];
      seg.cmds.phi = vals[5];
      seg.cmds.theta = vals[6];
      if (sc.segments.empty()) {
        if (seg.t_start != 0.0) fail(origin, line_no, "first segment must start at t = 0");
      } else if (seg.t_start <= sc.segments.back().t_start) {
        fail(origin, line_no, "segment start times must be strictly increasing");
      }
      sc.segments.push_back(seg);
    } else {
      fail(origin, line_no, "unknown key `" + key + "`");
    }
  }

  if (!have_duration) throw ParseError(origin + ": missing key `duration`");
  if (sc.segments.empty()) throw ParseError(origin + ": no segments");
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path);
}

}  // namespace quadloc::sim
