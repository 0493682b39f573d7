#include "logvar/oracle.hpp"

#include <cmath>

namespace logvar {

Field gausson(const Grid& g, double v_infinity) {
  if (!std::isfinite(v_infinity) || !(v_infinity > -1.0))
    throw std::invalid_argument("gausson: v_infinity must be finite and > -1");
  const double c = std::exp(0.5 * (g.dim + v_infinity));
  return sample_field(g, [&](const std::array<double, 3>& x) {
    double r2 = 0.0;
    for (int a = 0; a < g.dim; ++a) r2 += x[a] * x[a];
    return c * std::exp(-0.5 * r2);
  });
}

double gausson_energy(int dim, double v_infinity) {
  if (!std::isfinite(v_infinity) || !(v_infinity > -1.0))
    throw std::invalid_argument("gausson_energy: v_infinity must be finite and > -1");
  return 0.5 * std::pow(M_PI, 0.5 * dim) * std::exp(dim + v_infinity);
}

LevelsReport compare_levels(const GroundResult& ground,
                            const PotentialSpec& pot) {
  if (!std::isfinite(pot.v_infinity))
    throw std::invalid_argument("compare_levels: v_infinity must be finite");
  LevelsReport r;
  r.c_infinity = gausson_energy(ground.field.grid.dim, pot.v_infinity);
  r.c_nehari = ground.energy.total_J;
  r.mountain_pass_gap = r.c_infinity - r.c_nehari;

  // quadrature floor: re-evaluate the same profile on the midpoint-refined grid
  const Field fine = interp_refine(ground.field);
  const PotentialSpec pot_fine = bind(pot, fine.grid);
  r.quadrature_floor = std::abs(total_energy(fine, pot_fine) - r.c_nehari);
  return r;
}

}  // namespace logvar
