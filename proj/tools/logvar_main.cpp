#include <CLI11.hpp>
#include <iostream>

#include "logvar/config.hpp"
#include "logvar/potential.hpp"
#include "logvar/report.hpp"
#include "logvar/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "logvar: variational solver for the logarithmic Schrodinger equation "
      "-lap u + V(x) u = u log u^2 (ground states, excited states, spectra)"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  bool seed_given = false;

  for (const std::string name :
       {"ground", "excited", "verify", "spectrum", "sweep"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "config file (key = value lines)");
    sub->add_option("--set", overrides, "override, repeatable: key=value");
    sub->add_option("--out", out_dir, "output directory (default: out)");
    sub->add_option("--seed", seed, "solver seed (overrides solver.seed)")
        ->each([&](const std::string&) { seed_given = true; });
  }

  CLI11_PARSE(app, argc, argv);

  try {
    logvar::RunConfig cfg = logvar::load_config(config_path, overrides);
    cfg.command = app.get_subcommands().front()->get_name();
    cfg.out_dir = out_dir;
    if (seed_given) cfg.solver_seed = seed;
    return logvar::run(cfg);
  } catch (const logvar::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return logvar::kExitConfig;
  } catch (const logvar::SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return logvar::kExitSolver;
  } catch (const logvar::EigensolveError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return logvar::kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
