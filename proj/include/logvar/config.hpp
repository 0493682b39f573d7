#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace logvar {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Resolved run configuration. Parsed from `key = value` files with `#`
// comments and dotted key namespaces; flag overrides beat file values.
struct RunConfig {
  std::string command;  // ground | excited | verify | spectrum | sweep

  int grid_dim = 1;
  double grid_half_width = 12.0;  // default 12 in 1D, 8 in 2D/3D
  int grid_points = 961;          // default 961 / 129 / 41 by dim
  bool half_width_set = false;
  bool points_set = false;

  std::string potential_kind = "constant";
  double potential_v_infinity = 0.0;
  double potential_depth = 0.5;
  double potential_sigma = 1.0;
  double potential_coefficient = 1.0;
  std::string potential_table_path;

  double solver_tol = 1e-8;
  long solver_max_iters = 50000;
  std::uint64_t solver_seed = 0;
  double solver_p = 2.0;

  int excited_count = 3;
  std::string excited_strategy = "symmetry";
  int spectrum_k = 6;

  double sweep_min = 0.0;
  double sweep_max = 0.5;
  int sweep_count = 6;

  std::string out_dir = "out";
};

struct ConfigEntry {
  std::string key;
  std::string value;
  int line = 0;
};

// Parses `key = value` text; malformed lines and duplicates raise
// ConfigError naming the line.
std::vector<ConfigEntry> parse_key_values(const std::string& text);

// Unknown keys and type mismatches raise ConfigError naming key and line.
RunConfig make_config(const std::vector<ConfigEntry>& file_kv,
                      const std::vector<std::string>& overrides);

RunConfig load_config(const std::string& path_or_empty,
                      const std::vector<std::string>& overrides);

// Echo of the resolved configuration, in stable key order.
std::vector<std::pair<std::string, std::string>> config_echo(const RunConfig&);

}  // namespace logvar
