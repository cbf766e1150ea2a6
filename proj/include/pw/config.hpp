#pragma once

#include <map>
#include <string>
#include <vector>

#include "pw/grid.hpp"
#include "pw/nls.hpp"

namespace pw {

struct ConfigError : std::runtime_error {
  explicit ConfigError(std::vector<std::string> v);
  std::vector<std::string> violations;
};

// Flat key = value run configuration ('#' comments). Keys are dotted; any key
// may be overridden by an environment variable PWT_<KEY> with dots replaced by
// underscores, upper-cased (e.g. PWT_NLS_SIGMA).
struct RunConfig {
  std::string command;
  std::map<std::string, std::string> kv;

  bool has(const std::string& key) const { return kv.count(key) != 0; }
  std::string str(const std::string& key, const std::string& def = "") const;
  double num(const std::string& key, double def) const;
  int integer(const std::string& key, int def) const;
  std::vector<double> list(const std::string& key) const;

  // Grid from grid.<axis>.{n,min,max}; throws if incomplete.
  Grid1D grid(const std::string& axis) const;
  bool has_grid(const std::string& axis) const;
  NlsParams nls_params() const;
  // Profile set from profile.<i>.speed / profile.<i>.shape over grid.z.
  ProfileSet profile_set() const;
};

const std::vector<std::string>& known_commands();

// Parses and fully validates; throws ConfigError carrying every violation
// (unknown keys, malformed values, range violations) rather than the first.
RunConfig parse_config(const std::string& text, const std::string& command);
RunConfig load_config(const std::string& path, const std::string& command);

}  // namespace pw
