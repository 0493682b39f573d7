#pragma once

#include <json.hpp>

#include "logvar/energy.hpp"
#include "logvar/multisol.hpp"
#include "logvar/oracle.hpp"
#include "logvar/potential.hpp"
#include "logvar/report.hpp"

namespace logvar {

using ojson = nlohmann::ordered_json;

inline ojson to_json(const EnergyBreakdown& b) {
  return ojson{{"kinetic", b.kinetic},
               {"potential_plus", b.potential_plus},
               {"potential_minus", b.potential_minus},
               {"log_term", b.log_term},
               {"phi", b.phi},
               {"psi", b.psi},
               {"total_J", b.total_J}};
}

inline ojson to_json(const SolverReport& r) {
  return ojson{{"iterations", r.iterations},
               {"residual_history", decimated(r.residual_history)},
               {"final_J", r.final_J},
               {"final_L2", r.final_l2},
               {"converged", r.converged},
               {"wall_time_seconds", r.wall_time_seconds},
               {"boundary_mass", r.boundary_mass}};
}

inline ojson to_json(const LevelsReport& r) {
  return ojson{{"c_infinity", r.c_infinity},
               {"c_nehari", r.c_nehari},
               {"mountain_pass_gap", r.mountain_pass_gap},
               {"quadrature_floor", r.quadrature_floor}};
}

inline ojson to_json(const SpectrumInfo& s) {
  return ojson{{"k", s.k},
               {"eigenvalues", s.eigenvalues},
               {"residuals", s.residuals}};
}

inline ojson to_json(const FountainScaffold& s) {
  return ojson{{"k_max", s.k_max},
               {"eigenvalues", s.eigenvalues},
               {"beta", s.beta},
               {"r", s.r},
               {"rho", s.rho},
               {"b_estimates", s.b_estimates},
               {"b_constants", ojson{{"fitted", true},
                                     {"C2", s.c2_fitted},
                                     {"C3", s.c3_fitted}}},
               {"a_estimates", s.a_estimates}};
}

// entries reference field dump files written next to the report
inline ojson to_json(const SolutionSet& s,
                     const std::vector<std::string>& dump_names) {
  ojson arr = ojson::array();
  for (std::size_t i = 0; i < s.entries.size(); ++i) {
    const auto& e = s.entries[i];
    arr.push_back(ojson{{"total_J", e.total_J},
                        {"nodal_count", e.nodal_count},
                        {"residual_norm", e.residual_norm},
                        {"field_dump", i < dump_names.size() ? dump_names[i]
                                                             : ""}});
  }
  return ojson{{"entries", arr},
               {"complete", s.complete},
               {"warning", s.warning}};
}

}  // namespace logvar
