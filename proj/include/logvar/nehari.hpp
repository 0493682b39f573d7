#pragma once

#include "logvar/energy.hpp"
#include "logvar/flow.hpp"
#include "logvar/grid.hpp"
#include "logvar/potential.hpp"
#include "logvar/report.hpp"

namespace logvar {

struct NehariProjection {
  double scale = 1.0;          // s*
  Field projected;             // s* u
  double phi_prime_at_scale = 0.0;
  double q_form = 0.0;         // |grad u|^2 + int (V+1) u^2 of the input
};

// Unique intersection of the ray {s u : s > 0} with the Nehari manifold:
//   log s*^2 = (Q(u) - int u^2 (log u^2 + 1)) / |u|_2^2.
// Requires a coercive potential or a passed spectral gate (lambda_1 > 0).
NehariProjection project(const Field& u, const PotentialSpec& pot);

struct GroundOptions {
  double tol = 1e-8;
  long max_iters = 50000;
};

struct GroundResult {
  Field field;
  SolverReport report;
  EnergyBreakdown energy;
};

// Energy minimization restricted to the Nehari manifold; the returned field
// is sign-normalized (nonnegative at the node of largest magnitude).
// Throws SolverError when the iteration cap is hit without convergence.
GroundResult ground_state(const PotentialSpec& pot, const Field& init,
                          const GroundOptions& opts = {});

// Gaussian bump exp(-|x|^2/2), the default initializer.
Field default_init(const Grid& g);

}  // namespace logvar
