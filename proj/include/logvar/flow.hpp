#pragma once

#include <functional>
#include <iosfwd>
#include <memory>

#include "logvar/energy.hpp"
#include "logvar/grid.hpp"
#include "logvar/potential.hpp"
#include "logvar/report.hpp"

namespace logvar {

// Solves (-lap_h + (V+1)^+ + 1) p = g, the Riesz map of the working-space
// inner product. Direct tridiagonal solve in 1D, conjugate gradients else.
class XMetric {
 public:
  XMetric(const Grid& g, const PotentialSpec& pot);
  Field solve(const Field& g) const;

 private:
  Grid grid_;
  std::vector<double> weight_;  // (V+1)^+ + 1
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

struct DescendOptions {
  double tol = 1e-8;
  long max_steps = 50000;
  double armijo_c = 1e-4;
  double backtrack = 0.5;
  double step_max = 1.0;
  int max_halvings = 60;
  // Newton finisher once the preconditioned descent reaches its round-off
  // plateau (1D only).
  bool newton_polish = true;
  long polish_cap = 200;
};

struct DescendResult {
  Field field;
  SolverReport report;
};

// Nehari-retracted descent on the preconditioned negative gradient with
// Armijo backtracking; every accepted iterate lies on the Nehari manifold
// and the energy history is nonincreasing. Returns the last iterate even
// when the step budget runs out (report.converged = false then); throws
// SolverError only on line-search failure.
DescendResult descend(const Field& u0, const PotentialSpec& pot,
                      const DescendOptions& opts = {});

struct PsSummary {
  double sup_J = 0.0;
  double eps = 0.0;            // max residual along the run
  double l2_cap = 0.0;         // bound on |u|_2 from 2J - <J'(u),u>
  double norm_cap = 0.0;       // bound on the X-norm from the coercivity chain
  double observed_max_norm = 0.0;
  bool within = false;
};

// Checks the iterate-norm history of a run against the norm cap implied by
// bounded energy plus vanishing derivative (the Palais-Smale diagnostic).
PsSummary ps_diagnostic(const SolverReport& rep, const PotentialSpec& pot);

// Two-column CSV "step,value".
void export_history_csv(std::ostream& os, const std::vector<double>& history);

}  // namespace logvar
