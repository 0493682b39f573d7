#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "logvar/config.hpp"
#include "logvar/run.hpp"

using namespace logvar;
namespace fs = std::filesystem;

namespace {

RunConfig from_text(const std::string& text,
                    const std::vector<std::string>& overrides = {}) {
  return make_config(parse_key_values(text), overrides);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag)
      : path(fs::temp_directory_path() / ("logvar_" + tag)) {
    fs::remove_all(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("minimal config fills defaults") {
  const RunConfig c = from_text(
      "grid.dim = 1\n"
      "potential.kind = constant\n");
  CHECK(c.grid_half_width == 12.0);
  CHECK(c.grid_points == 961);
  CHECK(c.solver_tol == 1e-8);
  CHECK(c.solver_max_iters == 50000);
  CHECK(c.potential_kind == "constant");
}

TEST_CASE("dimension-dependent defaults") {
  const RunConfig c2 = from_text("grid.dim = 2\n");
  CHECK(c2.grid_half_width == 8.0);
  CHECK(c2.grid_points == 129);
  const RunConfig c3 = from_text("grid.dim = 3\n");
  CHECK(c3.grid_half_width == 8.0);
  CHECK(c3.grid_points == 41);
}

TEST_CASE("harmonic kind accepted; validation failures name key and line") {
  CHECK(from_text("potential.kind = harmonic\n").potential_kind == "harmonic");

  CHECK_THROWS_WITH_AS(from_text("grid.dim = 4\n"),
                       doctest::Contains("dim must be 1, 2, or 3"),
                       ConfigError);
  CHECK_THROWS_WITH_AS(from_text("# c\nnop.key = 1\n"),
                       doctest::Contains("nop.key"), ConfigError);
  CHECK_THROWS_WITH_AS(from_text("\n\ngrid.points_per_axis = soup\n"),
                       doctest::Contains("line 3"), ConfigError);
  CHECK_THROWS_AS(from_text("grid.dim = 1\ngrid.dim = 2\n"), ConfigError);
  CHECK_THROWS_AS(from_text("solver.tol\n"), ConfigError);
}

TEST_CASE("comments, whitespace, and overrides") {
  const RunConfig c = from_text(
      "  solver.tol =  1e-6   # tight enough\n"
      "# full-line comment\n"
      "potential.kind = gaussian_well\n",
      {"solver.tol=1e-4", "potential.depth=0.3"});
  CHECK(c.solver_tol == 1e-4);  // override beats file
  CHECK(c.potential_depth == 0.3);
  CHECK_THROWS_AS(from_text("", {"notakey"}), ConfigError);
}

TEST_CASE("config echo round-trips through the parser") {
  const RunConfig c = from_text("grid.dim = 2\npotential.kind = harmonic\n");
  std::string text;
  for (const auto& [k, v] : config_echo(c)) {
    if (k == "command" || k == "out_dir" || v.empty()) continue;
    text += k + " = " + v + "\n";
  }
  const RunConfig back = from_text(text);
  CHECK(back.grid_dim == c.grid_dim);
  CHECK(back.grid_points == c.grid_points);
  CHECK(back.potential_kind == c.potential_kind);
}

TEST_CASE("ground run writes artifacts deterministically") {
  TempDir d1("det1"), d2("det2");
  RunConfig cfg = from_text(
      "grid.points_per_axis = 241\n"
      "potential.kind = constant\n"
      "solver.tol = 1e-6\n");
  cfg.command = "ground";

  cfg.out_dir = d1.path.string();
  REQUIRE(run(cfg) == kExitOk);
  cfg.out_dir = d2.path.string();
  REQUIRE(run(cfg) == kExitOk);

  for (const char* name : {"ground.field", "energy.json", "levels.json"})
    CHECK(slurp(d1.path / name) == slurp(d2.path / name));

  // report JSON is bit-identical modulo the wall_time field
  auto normalized = [](const fs::path& p) {
    nlohmann::json j = nlohmann::json::parse(slurp(p));
    j.erase("wall_time_seconds");
    return j.dump();
  };
  CHECK(normalized(d1.path / "report.json") ==
        normalized(d2.path / "report.json"));

  CHECK(fs::exists(d1.path / "manifest.json"));
  nlohmann::json manifest =
      nlohmann::json::parse(slurp(d1.path / "manifest.json"));
  CHECK(manifest["command"] == "ground");
  CHECK(manifest["config"]["grid.points_per_axis"] == "241");
  CHECK(manifest["artifacts"].size() >= 3);
}

TEST_CASE("sweep writes the expected CSV") {
  TempDir d("sweep");
  RunConfig cfg = from_text(
      "grid.points_per_axis = 241\n"
      "potential.kind = gaussian_well\n"
      "solver.tol = 1e-6\n"
      "sweep.min = 0\n"
      "sweep.max = 0.5\n"
      "sweep.count = 6\n");
  cfg.command = "sweep";
  cfg.out_dir = d.path.string();
  REQUIRE(run(cfg) == kExitOk);

  std::istringstream csv(slurp(d.path / "sweep.csv"));
  std::string line;
  REQUIRE(std::getline(csv, line));
  CHECK(line == "A,c_N,c_infinity,gap");
  int rows = 0;
  double prev_gap = -1e300;
  while (std::getline(csv, line)) {
    ++rows;
    const auto last_comma = line.rfind(',');
    const double gap = std::stod(line.substr(last_comma + 1));
    CHECK(gap >= prev_gap - 1e-9);  // deeper well widens the gap
    prev_gap = gap;
  }
  CHECK(rows == 6);
}

TEST_CASE("spectrum run writes eigen artifacts") {
  TempDir d("spec");
  RunConfig cfg = from_text(
      "grid.points_per_axis = 241\n"
      "potential.kind = harmonic\n"
      "spectrum.k = 3\n");
  cfg.command = "spectrum";
  cfg.out_dir = d.path.string();
  REQUIRE(run(cfg) == kExitOk);
  CHECK(fs::exists(d.path / "spectrum.json"));
  CHECK(fs::exists(d.path / "eig_00.field"));
  CHECK(fs::exists(d.path / "eig_02.field"));
  nlohmann::json j = nlohmann::json::parse(slurp(d.path / "spectrum.json"));
  CHECK(j["eigenvalues"].size() == 3);
  CHECK(j["eigenvalues"][0].get<double>() == doctest::Approx(2.0).epsilon(1e-3));
}
