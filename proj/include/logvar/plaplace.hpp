#pragma once

#include "logvar/flow.hpp"
#include "logvar/grid.hpp"
#include "logvar/potential.hpp"
#include "logvar/report.hpp"

namespace logvar {

struct PExponent {
  double p = 2.0;
  double q_growth = 3.0;  // diagnostics only, in (p, p*)
};

// p > 1 always; for dim >= 2 additionally p < dim unless p == 2 (which
// reduces to the Laplacian case).
void validate_p(const PExponent& pe, int dim);

// (1/p) [ sum_links h^{N-p} |du|^p + int (V+1)|u|^p ] - (1/p) int |u|^p log|u|^p
double p_energy(const Field& u, const PotentialSpec& pot, const PExponent& pe);

// Discrete gradient of p_energy in the quadrature inner product; link fluxes
// |du|^{p-2} du are regularized as (du^2 + eps^2)^{(p-2)/2} du, eps = 1e-12.
Field p_residual(const Field& u, const PotentialSpec& pot, const PExponent& pe);

// Unique Nehari crossing of the ray {s u}:
//   log s^p = (Q_p(u) - int |u|^p (log|u|^p + 1)) / |u|_p^p.
double p_nehari_scale(const Field& u, const PotentialSpec& pot,
                      const PExponent& pe);

double p_norm_p(const Field& u, double p);  // int |u|^p
double p_q_form(const Field& u, const PotentialSpec& pot, const PExponent& pe);

// Surrogate for the positivity assumption on the p-quadratic form: the
// minimum of Q_p(phi)/|phi|_p^p over the lowest eigenfields of the p = 2
// operator.
double p_assumption_margin(const PotentialSpec& pot, const Grid& g,
                           const PExponent& pe, int k = 6);

// Ground-state search for the p-functional with the same Nehari-retracted
// descent (X-metric preconditioner of the p = 2 case).
struct PGroundResult {
  Field field;
  SolverReport report;
  double total_J = 0.0;
};
PGroundResult p_ground_state(const PotentialSpec& pot, const Field& init,
                             const PExponent& pe, double tol = 1e-6,
                             long max_iters = 50000);

}  // namespace logvar
