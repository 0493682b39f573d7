#include "logvar/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "logvar/io_util.hpp"

namespace logvar {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

[[noreturn]] void fail(const std::string& key, int line, const std::string& why) {
  std::ostringstream os;
  os << "config error";
  if (line > 0) os << " (line " << line << ")";
  if (!key.empty()) os << " key '" << key << "'";
  os << ": " << why;
  throw ConfigError(os.str());
}

double to_double(const std::string& key, int line, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) fail(key, line, "not a number: '" + v + "'");
    return x;
  } catch (const ConfigError&) {
    throw;
  } catch (...) {
    fail(key, line, "not a number: '" + v + "'");
  }
}

long to_long(const std::string& key, int line, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long x = std::stol(v, &pos);
    if (pos != v.size()) fail(key, line, "not an integer: '" + v + "'");
    return x;
  } catch (const ConfigError&) {
    throw;
  } catch (...) {
    fail(key, line, "not an integer: '" + v + "'");
  }
}

std::uint64_t to_u64(const std::string& key, int line, const std::string& v) {
  try {
    std::size_t pos = 0;
    const unsigned long long x = std::stoull(v, &pos);
    if (pos != v.size()) fail(key, line, "not an unsigned integer: '" + v + "'");
    return x;
  } catch (const ConfigError&) {
    throw;
  } catch (...) {
    fail(key, line, "not an unsigned integer: '" + v + "'");
  }
}

}  // namespace

std::vector<ConfigEntry> parse_key_values(const std::string& text) {
  std::vector<ConfigEntry> kv;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      fail("", lineno, "expected 'key = value': '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty()) fail("", lineno, "empty key");
    for (const ConfigEntry& e : kv)
      if (e.key == key) fail(key, lineno, "duplicate key");
    kv.push_back(ConfigEntry{key, val, lineno});
  }
  return kv;
}

namespace {

void apply_key(RunConfig& c, const std::string& key, const std::string& val,
               int line) {
  if (key == "grid.dim") {
    const long d = to_long(key, line, val);
    if (d < 1 || d > 3) fail(key, line, "dim must be 1, 2, or 3");
    c.grid_dim = static_cast<int>(d);
  } else if (key == "grid.half_width") {
    const double L = to_double(key, line, val);
    if (!(L > 0.0)) fail(key, line, "half_width must be positive");
    c.grid_half_width = L;
    c.half_width_set = true;
  } else if (key == "grid.points_per_axis") {
    const long n = to_long(key, line, val);
    if (n < 8) fail(key, line, "points_per_axis must be >= 8");
    c.grid_points = static_cast<int>(n);
    c.points_set = true;
  } else if (key == "potential.kind") {
    if (val != "constant" && val != "gaussian_well" && val != "harmonic" &&
        val != "table")
      fail(key, line,
           "kind must be one of constant, gaussian_well, harmonic, table");
    c.potential_kind = val;
  } else if (key == "potential.v_infinity") {
    c.potential_v_infinity = to_double(key, line, val);
  } else if (key == "potential.depth") {
    const double a = to_double(key, line, val);
    if (a < 0.0) fail(key, line, "depth must be >= 0");
    c.potential_depth = a;
  } else if (key == "potential.sigma") {
    const double s = to_double(key, line, val);
    if (!(s > 0.0)) fail(key, line, "sigma must be positive");
    c.potential_sigma = s;
  } else if (key == "potential.coefficient") {
    const double s = to_double(key, line, val);
    if (!(s > 0.0)) fail(key, line, "coefficient must be positive");
    c.potential_coefficient = s;
  } else if (key == "potential.table_path") {
    c.potential_table_path = val;
  } else if (key == "solver.tol") {
    const double t = to_double(key, line, val);
    if (!(t > 0.0)) fail(key, line, "tol must be positive");
    c.solver_tol = t;
  } else if (key == "solver.max_iters") {
    const long m = to_long(key, line, val);
    if (m < 1) fail(key, line, "max_iters must be >= 1");
    c.solver_max_iters = m;
  } else if (key == "solver.seed") {
    c.solver_seed = to_u64(key, line, val);
  } else if (key == "solver.p" || key == "p") {
    const double p = to_double(key, line, val);
    if (!(p > 1.0)) fail(key, line, "p must exceed 1");
    c.solver_p = p;
  } else if (key == "excited.count") {
    const long n = to_long(key, line, val);
    if (n < 1) fail(key, line, "count must be >= 1");
    c.excited_count = static_cast<int>(n);
  } else if (key == "excited.strategy") {
    if (val != "symmetry" && val != "deflation")
      fail(key, line, "strategy must be symmetry or deflation");
    c.excited_strategy = val;
  } else if (key == "spectrum.k") {
    const long n = to_long(key, line, val);
    if (n < 1) fail(key, line, "k must be >= 1");
    c.spectrum_k = static_cast<int>(n);
  } else if (key == "sweep.min") {
    c.sweep_min = to_double(key, line, val);
  } else if (key == "sweep.max") {
    c.sweep_max = to_double(key, line, val);
  } else if (key == "sweep.count") {
    const long n = to_long(key, line, val);
    if (n < 1) fail(key, line, "count must be >= 1");
    c.sweep_count = static_cast<int>(n);
  } else {
    fail(key, line, "unknown key");
  }
}

}  // namespace

RunConfig make_config(const std::vector<ConfigEntry>& file_kv,
                      const std::vector<std::string>& overrides) {
  RunConfig c;
  for (const ConfigEntry& e : file_kv)
    if (e.key == "grid.dim") apply_key(c, e.key, e.value, e.line);
  for (const ConfigEntry& e : file_kv)
    if (e.key != "grid.dim") apply_key(c, e.key, e.value, e.line);
  for (const std::string& ov : overrides) {
    const std::size_t eq = ov.find('=');
    if (eq == std::string::npos)
      throw ConfigError("override must be key=value: '" + ov + "'");
    std::string key = ov.substr(0, eq), val = ov.substr(eq + 1);
    while (!key.empty() && key.back() == ' ') key.pop_back();
    while (!val.empty() && val.front() == ' ') val.erase(val.begin());
    apply_key(c, key, val, 0);
  }
  if (!c.half_width_set) c.grid_half_width = c.grid_dim == 1 ? 12.0 : 8.0;
  if (!c.points_set)
    c.grid_points = c.grid_dim == 1 ? 961 : (c.grid_dim == 2 ? 129 : 41);
  if (c.potential_kind == "table" && c.potential_table_path.empty())
    throw ConfigError("table potential requires potential.table_path");
  if (c.sweep_max < c.sweep_min)
    throw ConfigError("sweep.max must be >= sweep.min");
  return c;
}

RunConfig load_config(const std::string& path_or_empty,
                      const std::vector<std::string>& overrides) {
  std::vector<ConfigEntry> kv;
  if (!path_or_empty.empty()) {
    std::ifstream in(path_or_empty);
    if (!in) throw ConfigError("cannot open config file: " + path_or_empty);
    std::ostringstream buf;
    buf << in.rdbuf();
    kv = parse_key_values(buf.str());
  }
  return make_config(kv, overrides);
}

std::vector<std::pair<std::string, std::string>> config_echo(
    const RunConfig& c) {
  std::vector<std::pair<std::string, std::string>> out;
  out.emplace_back("command", c.command);
  out.emplace_back("grid.dim", std::to_string(c.grid_dim));
  out.emplace_back("grid.half_width", format_double(c.grid_half_width));
  out.emplace_back("grid.points_per_axis", std::to_string(c.grid_points));
  out.emplace_back("potential.kind", c.potential_kind);
  out.emplace_back("potential.v_infinity", format_double(c.potential_v_infinity));
  out.emplace_back("potential.depth", format_double(c.potential_depth));
  out.emplace_back("potential.sigma", format_double(c.potential_sigma));
  out.emplace_back("potential.coefficient",
                   format_double(c.potential_coefficient));
  out.emplace_back("potential.table_path", c.potential_table_path);
  out.emplace_back("solver.tol", format_double(c.solver_tol));
  out.emplace_back("solver.max_iters", std::to_string(c.solver_max_iters));
  out.emplace_back("solver.seed", std::to_string(c.solver_seed));
  out.emplace_back("solver.p", format_double(c.solver_p));
  out.emplace_back("excited.count", std::to_string(c.excited_count));
  out.emplace_back("excited.strategy", c.excited_strategy);
  out.emplace_back("spectrum.k", std::to_string(c.spectrum_k));
  out.emplace_back("sweep.min", format_double(c.sweep_min));
  out.emplace_back("sweep.max", format_double(c.sweep_max));
  out.emplace_back("sweep.count", std::to_string(c.sweep_count));
  out.emplace_back("out_dir", c.out_dir);
  return out;
}

}  // namespace logvar
