#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "logvar/grid.hpp"
#include "logvar/potential.hpp"
#include "logvar/report.hpp"

namespace logvar {

// Eigen-subspace scaffolding of the symmetric minimax scheme: X_k spans the
// first k eigenfields of -lap + (V+1)^+, Z_{k-1} their quadrature-orthogonal
// complement, beta_k = lambda_k^{-1/2} (so |u|_2 <= beta_k |u| on Z_{k-1}),
// r_k = 1/beta_k and rho_k = 10 r_k.
struct FountainScaffold {
  int k_max = 0;
  std::vector<double> eigenvalues;
  std::vector<Field> eigenfields;
  std::vector<double> beta;
  std::vector<double> r;
  std::vector<double> rho;
  // lower-bound estimates b_k = r_k^2/4 - C2 - C3 with fitted constants
  std::vector<double> b_estimates;
  double c2_fitted = 0.0;
  double c3_fitted = 0.0;
  // max of J over sampled sphere points of radius rho_k in X_k (recorded,
  // not asserted)
  std::vector<double> a_estimates;
};

FountainScaffold build_scaffold(const PotentialSpec& pot, const Grid& g,
                                int k_max);

enum class MultiStrategy { symmetry, deflation };

struct SolutionEntry {
  Field field;
  double total_J = 0.0;
  int nodal_count = 0;
  double residual_norm = 0.0;
};

struct SolutionSet {
  std::vector<SolutionEntry> entries;  // ascending total_J
  bool complete = true;
  std::string warning;
};

struct MultisolOptions {
  double tol = 1e-6;
  long warmup_steps = 60;
  long newton_cap = 200;
  int retries = 3;
  double separation_rel = 1e-3;
  std::uint64_t seed = 0;
};

// Finds `count` distinct solution pairs +-u with ascending energies. The
// symmetry strategy (1D) restricts to parity sectors with prescribed nodal
// counts 0,1,2,...; the deflation strategy penalizes proximity to found
// solutions in the Newton step. On failure to separate a new solution the
// set is returned partial with a warning.
SolutionSet find_solutions(const PotentialSpec& pot,
                           const FountainScaffold& scaffold, int count,
                           MultiStrategy strategy,
                           const MultisolOptions& opts = {});

}  // namespace logvar
