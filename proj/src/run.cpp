#include "logvar/run.hpp"

#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "logvar/io_util.hpp"
#include "logvar/json_io.hpp"
#include "logvar/multisol.hpp"
#include "logvar/nehari.hpp"
#include "logvar/oracle.hpp"
#include "logvar/plaplace.hpp"
#include "logvar/verify.hpp"

namespace logvar {

namespace fs = std::filesystem;

namespace {

struct ArtifactSink {
  fs::path dir;
  std::vector<std::pair<std::string, std::string>> checksums;

  void write(const std::string& name, const std::string& content) {
    fs::create_directories(dir);
    std::ofstream out(dir / name, std::ios::binary);
    out << content;
    checksums.emplace_back(name, fnv1a64_hex(content));
  }
};

std::string dump_field(const Field& u) {
  std::ostringstream os;
  write_field(os, u);
  return os.str();
}

Grid grid_from(const RunConfig& c) {
  return make_grid(c.grid_dim, c.grid_half_width, c.grid_points);
}

PotentialSpec potential_from(const RunConfig& c, const Grid& g) {
  if (c.potential_kind == "constant")
    return bind(constant_potential(c.potential_v_infinity), g);
  if (c.potential_kind == "gaussian_well")
    return bind(gaussian_well(c.potential_depth, c.potential_sigma,
                              c.potential_v_infinity),
                g);
  if (c.potential_kind == "harmonic")
    return bind(harmonic_potential(c.potential_coefficient), g);
  // table
  std::ifstream in(c.potential_table_path);
  if (!in)
    throw ConfigError("cannot open potential.table_path: " +
                      c.potential_table_path);
  std::vector<double> vals;
  double v;
  while (in >> v) vals.push_back(v);
  return bind(table_potential(std::move(vals), c.potential_v_infinity), g);
}

void write_manifest(ArtifactSink& sink, const RunConfig& cfg) {
  ojson m;
  m["command"] = cfg.command;
  ojson conf;
  for (const auto& [k, v] : config_echo(cfg)) conf[k] = v;
  m["config"] = conf;
  ojson arts = ojson::array();
  for (const auto& [name, sum] : sink.checksums)
    arts.push_back(ojson{{"name", name}, {"fnv1a64", sum}});
  m["artifacts"] = arts;
  std::ofstream out(sink.dir / "manifest.json");
  out << m.dump(2) << "\n";
}

int run_ground(const RunConfig& cfg, ArtifactSink& sink) {
  const Grid g = grid_from(cfg);
  PotentialSpec pot = potential_from(cfg, g);
  spectral_gate(pot);

  if (cfg.solver_p != 2.0) {
    const PExponent pe{cfg.solver_p, cfg.solver_p + 1.0};
    const PGroundResult res = p_ground_state(pot, default_init(g), pe,
                                             cfg.solver_tol,
                                             cfg.solver_max_iters);
    sink.write("ground.field", dump_field(res.field));
    sink.write("report.json", to_json(res.report).dump(2) + "\n");
    std::cout << "p-ground state: J_p = " << format_double(res.total_J)
              << ", residual = " << format_double(res.report.ps_epsilon)
              << "\n";
    return kExitOk;
  }

  GroundOptions opts;
  opts.tol = cfg.solver_tol;
  opts.max_iters = cfg.solver_max_iters;
  const GroundResult res = ground_state(pot, default_init(g), opts);

  sink.write("ground.field", dump_field(res.field));
  sink.write("report.json", to_json(res.report).dump(2) + "\n");
  sink.write("energy.json", to_json(res.energy).dump(2) + "\n");
  if (std::isfinite(pot.v_infinity)) {
    const LevelsReport lev = compare_levels(res, pot);
    sink.write("levels.json", to_json(lev).dump(2) + "\n");
  }
  std::cout << "ground state: J = " << format_double(res.energy.total_J)
            << ", residual = " << format_double(res.report.ps_epsilon)
            << ", iterations = " << res.report.iterations << "\n";
  return kExitOk;
}

int run_excited(const RunConfig& cfg, ArtifactSink& sink) {
  const Grid g = grid_from(cfg);
  PotentialSpec pot = potential_from(cfg, g);
  const FountainScaffold sc = build_scaffold(pot, g, cfg.excited_count);
  sink.write("scaffold.json", to_json(sc).dump(2) + "\n");

  MultisolOptions mo;
  mo.tol = std::max(cfg.solver_tol, 1e-10);
  mo.seed = cfg.solver_seed;
  const MultiStrategy strat = cfg.excited_strategy == "symmetry"
                                  ? MultiStrategy::symmetry
                                  : MultiStrategy::deflation;
  const SolutionSet set = find_solutions(pot, sc, cfg.excited_count, strat, mo);

  std::vector<std::string> names;
  for (std::size_t i = 0; i < set.entries.size(); ++i) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "solution_%02zu.field", i);
    names.emplace_back(buf);
    sink.write(names.back(), dump_field(set.entries[i].field));
  }
  sink.write("solutions.json", to_json(set, names).dump(2) + "\n");
  for (std::size_t i = 0; i < set.entries.size(); ++i)
    std::cout << "solution " << i << ": J = "
              << format_double(set.entries[i].total_J)
              << ", nodal count = " << set.entries[i].nodal_count << "\n";
  if (!set.complete) {
    std::cerr << "warning: " << set.warning << "\n";
    return kExitSolver;
  }
  return kExitOk;
}

int run_spectrum(const RunConfig& cfg, ArtifactSink& sink) {
  const Grid g = grid_from(cfg);
  PotentialSpec pot = potential_from(cfg, g);
  const SpectrumInfo s = lowest_eigenpairs(pot, g, cfg.spectrum_k);
  sink.write("spectrum.json", to_json(s).dump(2) + "\n");
  for (int i = 0; i < s.k; ++i) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "eig_%02d.field", i);
    sink.write(buf, dump_field(s.eigenfields[i]));
  }
  for (int i = 0; i < s.k; ++i)
    std::cout << "lambda_" << (i + 1) << " = "
              << format_double(s.eigenvalues[i]) << "\n";
  return kExitOk;
}

int run_sweep(const RunConfig& cfg, ArtifactSink& sink) {
  if (cfg.potential_kind != "gaussian_well")
    throw ConfigError("sweep requires potential.kind = gaussian_well");
  const Grid g = grid_from(cfg);

  struct Row {
    double A, c_n, c_inf, gap;
  };
  auto solve_row = [&](double A) -> Row {
    PotentialSpec pot =
        bind(gaussian_well(A, cfg.potential_sigma, cfg.potential_v_infinity), g);
    GroundOptions opts;
    opts.tol = cfg.solver_tol;
    opts.max_iters = cfg.solver_max_iters;
    const GroundResult res = ground_state(pot, default_init(g), opts);
    const double cinf = gausson_energy(g.dim, cfg.potential_v_infinity);
    return Row{A, res.energy.total_J, cinf, cinf - res.energy.total_J};
  };

  std::vector<std::future<Row>> futures;
  for (int i = 0; i < cfg.sweep_count; ++i) {
    const double A =
        cfg.sweep_count == 1
            ? cfg.sweep_min
            : cfg.sweep_min + (cfg.sweep_max - cfg.sweep_min) * i /
                                  (cfg.sweep_count - 1);
    futures.push_back(std::async(std::launch::async, solve_row, A));
  }
  std::ostringstream csv;
  csv << "A,c_N,c_infinity,gap\n";
  for (auto& f : futures) {
    const Row r = f.get();
    csv << format_double(r.A) << "," << format_double(r.c_n) << ","
        << format_double(r.c_inf) << "," << format_double(r.gap) << "\n";
  }
  sink.write("sweep.csv", csv.str());
  std::cout << csv.str();
  return kExitOk;
}

int run_verify(const RunConfig& cfg, ArtifactSink& sink) {
  const std::vector<CriterionResult> results = run_acceptance();
  bool all = true;
  ojson arr = ojson::array();
  for (const auto& r : results) {
    all = all && r.pass;
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << "criterion " << r.id
              << ": " << r.name << " (" << format_double(r.seconds) << " s)\n";
    if (!r.pass) std::cout << "       " << r.detail << "\n";
    arr.push_back(ojson{{"id", r.id},
                        {"name", r.name},
                        {"pass", r.pass},
                        {"seconds", r.seconds},
                        {"detail", r.detail}});
  }
  sink.write("verify.json", arr.dump(2) + "\n");
  return all ? kExitOk : kExitVerify;
}

}  // namespace

int run(const RunConfig& cfg) {
  ArtifactSink sink{fs::path(cfg.out_dir), {}};
  int code = kExitOk;
  if (cfg.command == "ground")
    code = run_ground(cfg, sink);
  else if (cfg.command == "excited")
    code = run_excited(cfg, sink);
  else if (cfg.command == "spectrum")
    code = run_spectrum(cfg, sink);
  else if (cfg.command == "sweep")
    code = run_sweep(cfg, sink);
  else if (cfg.command == "verify")
    code = run_verify(cfg, sink);
  else
    throw ConfigError("unknown command: " + cfg.command);
  write_manifest(sink, cfg);
  return code;
}

}  // namespace logvar
