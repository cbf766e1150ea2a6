#include "pw/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "pw/builders.hpp"
#include "pw/norms.hpp"
#include "pw/pwf_io.hpp"

namespace pw {

namespace {

std::string join(const std::vector<std::string>& v) {
  std::string s = "configuration invalid:";
  for (const auto& e : v) s += "\n  - " + e;
  return s;
}

bool is_pow2(int n) { return n >= 2 && (n & (n - 1)) == 0; }

struct KeySpec {
  const char* key;
  const char* kind;  // "num", "int", "list", "str"
};

// registry of grid axes usable by any command
const char* kGridAxes[] = {"z", "c", "x", "y", "k"};

const std::vector<KeySpec>& common_keys() {
  static const std::vector<KeySpec> keys = {
      {"out_dir", "str"},        {"threads", "int"},
      {"interp_order", "int"},   {"support_tol", "num"},
      {"pad_factor", "int"},     {"tol_xval", "num"},
      {"section.y", "num"},
  };
  return keys;
}

const std::map<std::string, std::vector<KeySpec>>& command_keys() {
  static const std::map<std::string, std::vector<KeySpec>> m = {
      {"transform", {{"field.f", "str"}, {"transform.method", "str"}}},
      {"invert", {{"field.u", "str"}, {"invert.xi_cutoff", "num"}, {"field.f", "str"}}},
      {"evolve",
       {{"field.f", "str"},
        {"field.profile", "str"},
        {"evolve.kind", "str"},
        {"evolve.a", "num"},
        {"evolve.t", "num"}}},
      {"wave", {{"field.f", "str"}, {"field.g", "str"}, {"wave.t", "num"}}},
      {"family",
       {{"field.profile", "str"}, {"family.kind", "str"}, {"family.t", "num"}}},
      {"nls1d",
       {{"field.profile", "str"}, {"evolve.a", "num"}}},
      {"nls-system", {}},
      {"nls-forced",
       {{"field.v0", "str"}, {"field.f", "str"}, {"forced.wrap", "int"}}},
      {"nls-monolithic", {{"field.v0", "str"}}},
      {"experiment",
       {{"experiment.name", "str"},
        {"field.f", "str"},
        {"field.v0", "str"},
        {"field.g", "str"},
        {"field.speed_factor", "str"},
        {"experiment.times", "list"},
        {"experiment.eps_ladder", "list"},
        {"experiment.x0", "num"},
        {"experiment.x1", "num"},
        {"experiment.slope", "num"},
        {"forced.wrap", "int"}}},
  };
  return m;
}

const std::vector<KeySpec>& nls_keys() {
  static const std::vector<KeySpec> keys = {
      {"nls.lambda", "num"},       {"nls.sigma", "num"},
      {"nls.dt", "num"},           {"nls.t_end", "num"},
      {"nls.record_every", "int"}, {"nls.blowup_factor", "num"},
      {"nls.dt_max", "num"},
  };
  return keys;
}

bool nls_command(const std::string& cmd) {
  return cmd.rfind("nls", 0) == 0 || cmd == "experiment";
}

bool parse_number(const std::string& s, double& out) {
  try {
    size_t pos = 0;
    out = std::stod(s, &pos);
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    return pos == s.size();
  } catch (...) {
    return false;
  }
}

std::string env_name(const std::string& key) {
  std::string name = "PWT_";
  for (char ch : key) name += (ch == '.') ? '_' : char(std::toupper(ch));
  return name;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> v)
    : std::runtime_error(join(v)), violations(std::move(v)) {}

const std::vector<std::string>& known_commands() {
  static const std::vector<std::string> cmds = {
      "transform", "invert", "evolve",     "wave",        "family",
      "nls1d",     "nls-system", "nls-forced", "nls-monolithic", "experiment"};
  return cmds;
}

std::string RunConfig::str(const std::string& key, const std::string& def) const {
  auto it = kv.find(key);
  return it == kv.end() ? def : it->second;
}

double RunConfig::num(const std::string& key, double def) const {
  auto it = kv.find(key);
  if (it == kv.end()) return def;
  double v = 0.0;
  if (!parse_number(it->second, v))
    throw ConfigError({"key '" + key + "': not a number: '" + it->second + "'"});
  return v;
}

int RunConfig::integer(const std::string& key, int def) const {
  return int(std::llround(num(key, double(def))));
}

std::vector<double> RunConfig::list(const std::string& key) const {
  std::vector<double> out;
  auto it = kv.find(key);
  if (it == kv.end()) return out;
  std::stringstream ss(it->second);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    double v = 0.0;
    if (!parse_number(tok, v))
      throw ConfigError({"key '" + key + "': bad list element '" + tok + "'"});
    out.push_back(v);
  }
  return out;
}

bool RunConfig::has_grid(const std::string& axis) const {
  return has("grid." + axis + ".n");
}

Grid1D RunConfig::grid(const std::string& axis) const {
  const std::string p = "grid." + axis + ".";
  if (!has(p + "n") || !has(p + "min") || !has(p + "max"))
    throw ConfigError({"grid '" + axis + "' needs " + p + "n, " + p + "min, " + p + "max"});
  return make_grid(integer(p + "n", 0), num(p + "min", 0), num(p + "max", 0));
}

NlsParams RunConfig::nls_params() const {
  NlsParams p;
  p.lambda = num("nls.lambda", p.lambda);
  p.sigma = num("nls.sigma", p.sigma);
  p.dt = num("nls.dt", p.dt);
  p.t_end = num("nls.t_end", p.t_end);
  p.record_every = integer("nls.record_every", p.record_every);
  p.blowup_factor = num("nls.blowup_factor", p.blowup_factor);
  p.dt_max = num("nls.dt_max", p.dt_max);
  return p;
}

ProfileSet RunConfig::profile_set() const {
  ProfileSet ps;
  const Grid1D gz = grid("z");
  for (int i = 0;; ++i) {
    const std::string pre = "profile." + std::to_string(i) + ".";
    if (!has(pre + "speed")) break;
    ProfileSet::Entry e;
    e.speed = num(pre + "speed", 0.0);
    e.profile = build_profile(str(pre + "shape", "gauss1d(1)"), gz);
    const double amp = num(pre + "scale", 1.0);
    e.profile.values *= amp;
    ps.entries.push_back(std::move(e));
  }
  return ps;
}

RunConfig parse_config(const std::string& text, const std::string& command) {
  std::vector<std::string> bad;
  if (std::find(known_commands().begin(), known_commands().end(), command) ==
      known_commands().end())
    throw ConfigError({"unknown command '" + command + "'"});

  RunConfig cfg;
  cfg.command = command;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const auto eq = line.find('=');
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (eq == std::string::npos) {
      bad.push_back("line " + std::to_string(lineno) + ": expected 'key = value'");
      continue;
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty()) {
      bad.push_back("line " + std::to_string(lineno) + ": empty key");
      continue;
    }
    if (cfg.kv.count(key))
      bad.push_back("duplicate key '" + key + "'");
    cfg.kv[key] = val;
  }

  // assemble the accepted-key set for this command
  std::set<std::string> known;
  auto add = [&known](const std::vector<KeySpec>& v) {
    for (const auto& k : v) known.insert(k.key);
  };
  add(common_keys());
  add(command_keys().at(command));
  if (nls_command(command)) add(nls_keys());
  for (const char* ax : kGridAxes)
    for (const char* part : {".n", ".min", ".max"})
      known.insert(std::string("grid.") + ax + part);
  // profile.<i>.{speed, shape, scale} families
  auto profile_key = [](const std::string& k) {
    if (k.rfind("profile.", 0) != 0) return false;
    const auto rest = k.substr(8);
    const auto dot = rest.find('.');
    if (dot == std::string::npos || dot == 0) return false;
    for (size_t i = 0; i < dot; ++i)
      if (!std::isdigit(static_cast<unsigned char>(rest[i]))) return false;
    const std::string leaf = rest.substr(dot + 1);
    return leaf == "speed" || leaf == "shape" || leaf == "scale";
  };

  // environment overrides for every known key
  for (const auto& key : known) {
    if (const char* v = std::getenv(env_name(key).c_str())) cfg.kv[key] = v;
  }

  for (const auto& [key, val] : cfg.kv) {
    if (!known.count(key) && !profile_key(key))
      bad.push_back("unknown key '" + key + "'");
    (void)val;
  }

  // numeric sanity for present keys
  auto check_num = [&](const std::string& key, double lo, double hi,
                       const std::string& msg) {
    if (!cfg.has(key)) return;
    double v = 0.0;
    if (!parse_number(cfg.kv.at(key), v)) {
      bad.push_back("key '" + key + "': not a number: '" + cfg.kv.at(key) + "'");
      return;
    }
    if (!(v >= lo && v <= hi))
      bad.push_back("key '" + key + "' = " + cfg.kv.at(key) + ": " + msg);
  };
  check_num("nls.sigma", 1.0, kInfinity, "sigma must be >= 1");
  check_num("nls.dt", 1e-300, kInfinity, "dt must be > 0");
  check_num("nls.t_end", 0.0, kInfinity, "t_end must be >= 0");
  check_num("nls.record_every", 1.0, kInfinity, "record_every must be >= 1");
  check_num("nls.blowup_factor", 1.0, kInfinity, "blowup_factor must be > 1");
  check_num("threads", 1.0, 4096.0, "threads must be in [1, 4096]");
  check_num("interp_order", 1.0, 7.0, "interp_order must be in [1, 7]");
  check_num("support_tol", 0.0, kInfinity, "support_tol must be >= 0");
  check_num("invert.xi_cutoff", 1e-300, kInfinity, "xi_cutoff must be > 0");
  for (const char* ax : kGridAxes) {
    const std::string nk = std::string("grid.") + ax + ".n";
    if (!cfg.has(nk)) continue;
    double v = 0.0;
    if (!parse_number(cfg.kv.at(nk), v) || !is_pow2(int(v)))
      bad.push_back("key '" + nk + "' = " + cfg.kv.at(nk) +
                    ": grid sizes must be powers of two");
  }

  // profile speeds pairwise distinct
  {
    std::vector<std::pair<int, double>> speeds;
    for (int i = 0;; ++i) {
      const std::string key = "profile." + std::to_string(i) + ".speed";
      if (!cfg.has(key)) break;
      double v = 0.0;
      if (parse_number(cfg.kv.at(key), v)) speeds.emplace_back(i, v);
    }
    for (size_t a = 0; a < speeds.size(); ++a)
      for (size_t b = a + 1; b < speeds.size(); ++b)
        if (std::abs(speeds[a].second - speeds[b].second) < 1e-9)
          bad.push_back("profiles " + std::to_string(speeds[a].first) + " and " +
                        std::to_string(speeds[b].first) +
                        " have coinciding speeds (speeds must be pairwise distinct)");
  }

  // referenced files must exist
  for (const auto& [key, val] : cfg.kv) {
    if (val.rfind("@", 0) == 0) {
      std::ifstream probe(val.substr(1));
      if (!probe) bad.push_back("key '" + key + "': file not found: " + val.substr(1));
    }
  }

  if (!bad.empty()) throw ConfigError(std::move(bad));
  return cfg;
}

RunConfig load_config(const std::string& path, const std::string& command) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open config: " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str(), command);
}

}  // namespace pw
