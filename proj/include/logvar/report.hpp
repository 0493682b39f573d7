#pragma once

#include <string>
#include <stdexcept>
#include <vector>

namespace logvar {

// History of one descent/solve run. energy/residual/norm histories hold one
// entry per accepted iterate (the X-norm for `norm_history`).
struct SolverReport {
  long iterations = 0;
  std::vector<double> residual_history;
  std::vector<double> energy_history;
  std::vector<double> norm_history;
  bool converged = false;
  double ps_epsilon = 0.0;  // final residual norm
  double boundary_mass = 0.0;
  double final_J = 0.0;
  double final_l2 = 0.0;
  double wall_time_seconds = 0.0;
};

// Keeps at most max_points entries (always including the last).
std::vector<double> decimated(const std::vector<double>& h,
                              std::size_t max_points = 1000);

class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, SolverReport rep)
      : std::runtime_error(what), report(std::move(rep)) {}
  SolverReport report;
};

}  // namespace logvar
