#pragma once

// Internal: shared iteration core for the Nehari-retracted descent and its
// Newton finisher. Not installed with the public headers.

#include <functional>

#include "logvar/flow.hpp"
#include "logvar/grid.hpp"
#include "logvar/report.hpp"

namespace logvar::detail {

struct EngineModel {
  std::function<double(const Field&)> energy;
  std::function<Field(const Field&)> residual;
  std::function<Field(const Field&)> project;
  std::function<double(const Field&)> xnorm;  // for the report norm history
  // Tridiagonal Jacobian of the residual (1D polish); leave empty to disable.
  std::function<void(const Field&, std::vector<double>& lower,
                     std::vector<double>& diag, std::vector<double>& upper)>
      newton_tridiag;
};

struct EngineOptions {
  double tol = 1e-8;
  long max_steps = 50000;
  double armijo_c = 1e-4;
  double backtrack = 0.5;
  double step_max = 1.0;
  int max_halvings = 60;
  bool newton_polish = true;
  long polish_cap = 200;
  int parity = -1;  // 0/1: re-symmetrize every iterate
};

struct EngineOutcome {
  Field field;
  SolverReport report;
  bool line_search_failed = false;
};

EngineModel log_energy_model(const PotentialSpec& gated_pot);

EngineOutcome run_engine(const EngineModel& model, const XMetric& metric,
                         const Field& u0, const EngineOptions& opts);

void sign_normalize(Field& u);

}  // namespace logvar::detail
