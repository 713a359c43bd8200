#include "quadloc/model/robot_params.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "quadloc/error.hpp"

namespace quadloc::model {

namespace {

struct Entry {
  std::vector<double> values;
  int line = 0;
  bool consumed = false;
};

using Table = std::map<std::string, Entry>;

[[noreturn]] void fail(const std::string& origin, int line, const std::string& what) {
  throw ParseError(origin + ":" + std::to_string(line) + ": " + what);
}

Table tokenize(const std::string& text, const std::string& origin) {
  Table table;
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

    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(raw.substr(0, eq));
    if (key.empty()) fail(origin, line_no, "empty key");
    if (table.count(key)) fail(origin, line_no, "duplicate key `" + key + "`");

    Entry entry;
    entry.line = line_no;
    std::istringstream vals(raw.substr(eq + 1));
    std::string tok;
    while (vals >> tok) {
      char* end = nullptr;
      const double v = std::strtod(tok.c_str(), &end);
      if (end == tok.c_str() || *end != '\0')
        fail(origin, line_no, "malformed number `" + tok + "` for key `" + key + "`");
      entry.values.push_back(v);
    }
    if (entry.values.empty()) fail(origin, line_no, "no values for key `" + key + "`");
    table.emplace(key, std::move(entry));
  }
  return table;
}

class Reader {
 public:
  Reader(Table& table, std::string origin) : table_(table), origin_(std::move(origin)) {}

  const Entry& require(const std::string& key, std::size_t count) {
    auto it = table_.find(key);
    if (it == table_.end()) throw ParseError(origin_ + ": missing key `" + key + "`");
    if (it->second.values.size() != count)
      fail(origin_, it->second.line,
           "key `" + key + "` expects " + std::to_string(count) + " value(s), got " +
               std::to_string(it->second.values.size()));
    it->second.consumed = true;
    return it->second;
  }

  double scalar(const std::string& key) { return require(key, 1).values[0]; }

  la::Vec3 vec3(const std::string& key) {
    const auto& e = require(key, 3);
    return la::vec3(e.values[0], e.values[1], e.values[2]);
  }

  // One value broadcasts to all four legs, otherwise four per-leg values.
  std::array<double, 4> per_leg(const std::string& key) {
    auto it = table_.find(key);
    if (it == table_.end()) throw ParseError(origin_ + ": missing key `" + key + "`");
    it->second.consumed = true;
    const auto& v = it->second.values;
    if (v.size() == 1) return {v[0], v[0], v[0], v[0]};
    if (v.size() == 4) return {v[0], v[1], v[2], v[3]};
    fail(origin_, it->second.line, "key `" + key + "` expects 1 or 4 values");
  }

  void check_all_consumed() const {
    for (const auto& [key, entry] : table_)
      if (!entry.consumed) fail(origin_, entry.line, "unknown key `" + key + "`");
  }

 private:
  Table& table_;
  std::string origin_;
};

void validate(const RobotParams& rp, const std::string& origin) {
  auto demand = [&](bool ok, const std::string& what) {
    if (!ok) throw ParseError(origin + ": " + what);
  };
  demand(rp.m > 0, "mass must be positive");
  demand(rp.g > 0, "gravity must be positive");
  demand(rp.zeta >= 0, "foot radius must be non-negative");
  demand(rp.l_t > 0 && rp.l_c > 0, "link lengths must be positive");
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      demand(std::abs(rp.I_g(i, j) - rp.I_g(j, i)) < 1e-12, "inertia must be symmetric");
  demand(rp.I_g(0, 0) > 0 && rp.I_g(1, 1) > 0 && rp.I_g(2, 2) > 0,
         "inertia diagonal must be positive");
  demand(la::det3(rp.I_g) > 0, "inertia must be positive definite");
  for (int i = 0; i < 4; ++i) {
    demand(rp.workspace[i].x_min < rp.workspace[i].x_max &&
               rp.workspace[i].y_min < rp.workspace[i].y_max,
           "workspace " + std::to_string(i + 1) + " is empty");
    demand(rp.gw[i][2] == 0.0, "wheel anchors live in the ground plane");
    demand(rp.k_p_feet[i] > 0 && rp.k_d_feet[i] > 0, "foot gains must be positive");
  }
  demand(rp.T_sw_min > 0 && rp.T_sw_min <= rp.T_sw_max, "swing time limits out of order");
  demand(rp.beta_min > 0 && rp.beta_min <= rp.beta_max && rp.beta_max < 1,
         "duty factor limits must satisfy 0 < min <= max < 1");
  demand(rp.h_swing > 0, "swing height must be positive");
  demand(rp.k_p_body > 0 && rp.k_d_body > 0, "body gains must be positive");
  demand(rp.T_s > 0, "control period must be positive");
  demand(rp.contact_threshold >= 0, "contact threshold must be non-negative");
}

}  // namespace

RobotParams parse_robot_params(const std::string& text, const std::string& origin) {
  Table table = tokenize(text, origin);
  Reader reader(table, origin);

  RobotParams rp;
  rp.m = reader.scalar("m");
  {
    const auto& e = reader.require("I_g", 9);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) rp.I_g(i, j) = e.values[3 * i + j];
  }
  rp.g = reader.scalar("g");
  rp.zeta = reader.scalar("zeta");
  rp.l_t = reader.scalar("l_t");
  rp.l_c = reader.scalar("l_c");
  for (int i = 0; i < 4; ++i) {
    const std::string idx = std::to_string(i + 1);
    rp.p_hip[i] = reader.vec3("p_hip_" + idx);
    rp.d[i] = reader.scalar("d_" + idx);
    {
      const auto& e = reader.require("gw_" + idx, 2);
      rp.gw[i] = la::vec3(e.values[0], e.values[1], 0.0);
    }
    {
      const auto& e = reader.require("workspace_" + idx, 4);
      rp.workspace[i] = {e.values[0], e.values[1], e.values[2], e.values[3]};
    }
    rp.q_stance[i] = reader.vec3("q_stance_" + idx);
  }
  rp.T_sw_min = reader.scalar("T_sw_min");
  rp.T_sw_max = reader.scalar("T_sw_max");
  rp.beta_min = reader.scalar("beta_min");
  rp.beta_max = reader.scalar("beta_max");
  rp.h_swing = reader.scalar("h_swing");
  rp.k_p_feet = reader.per_leg("k_p_feet");
  rp.k_d_feet = reader.per_leg("k_d_feet");
  rp.k_p_body = reader.scalar("k_p_body");
  rp.k_d_body = reader.scalar("k_d_body");
  rp.T_s = reader.scalar("T_s");
  rp.contact_threshold = reader.scalar("contact_threshold");
  reader.check_all_consumed();

  validate(rp, origin);
  return rp;
}

RobotParams load_robot_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open robot file `" + path + "`");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_robot_params(buf.str(), path);
}

}  // namespace quadloc::model
