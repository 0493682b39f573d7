#pragma once

#include "logvar/grid.hpp"
#include "logvar/nehari.hpp"
#include "logvar/potential.hpp"

namespace logvar {

// The explicit Gaussian solution of -lap u + V_inf u = u log u^2:
//   u(x) = exp((N + V_inf)/2) exp(-|x|^2/2).
Field gausson(const Grid& g, double v_infinity);

// Its energy level c_inf = pi^{N/2} e^{N + V_inf} / 2.
double gausson_energy(int dim, double v_infinity);

struct LevelsReport {
  double c_infinity = 0.0;
  double c_nehari = 0.0;
  double mountain_pass_gap = 0.0;  // c_infinity - c_nehari
  double quadrature_floor = 0.0;   // |J at n vs 2n-1| for the same profile
};

// Compares the computed Nehari level against the limiting-problem level.
// Requires a finite v_infinity on the potential.
LevelsReport compare_levels(const GroundResult& ground,
                            const PotentialSpec& pot);

}  // namespace logvar
