#pragma once

#include "logvar/grid.hpp"
#include "logvar/potential.hpp"

namespace logvar {

// Splitting J = Phi + Psi with
//   F1(s) = -s^2 log(s^2)/2                     for |s| < delta,
//   F1(s) = -s^2 (log delta^2 + 3)/2 + 2 delta |s| - delta^2/2   for |s| >= delta,
//   F2(s) = s^2 log(s^2)/2 + F1(s)  (identically zero on |s| < delta).
// F1 is convex iff delta <= e^{-3/2}.
struct EnergySplitParams {
  double delta = 0.1353352832366127;  // e^{-2}
  double p_growth = 3.0;              // only used by growth diagnostics
};

void validate(const EnergySplitParams& p);

double f1(double s, const EnergySplitParams& p = {});
double f1_prime(double s, const EnergySplitParams& p = {});
double f2(double s, const EnergySplitParams& p = {});
double f2_prime(double s, const EnergySplitParams& p = {});

struct EnergyBreakdown {
  double kinetic = 0.0;          // (1/2) int |grad u|^2
  double potential_plus = 0.0;   // (1/2) int (V+1)^+ u^2
  double potential_minus = 0.0;  // (1/2) int (V+1)^- u^2
  double log_term = 0.0;         // (1/2) int u^2 log u^2
  double phi = 0.0;
  double psi = 0.0;
  double total_J = 0.0;          // kinetic + potential_plus - potential_minus - log_term
};

class EnergyError : public std::runtime_error {
 public:
  explicit EnergyError(const std::string& what) : std::runtime_error(what) {}
};

EnergyBreakdown evaluate(const Field& u, const PotentialSpec& pot,
                         const EnergySplitParams& params = {});

// J(u) only, by the direct log form.
double total_energy(const Field& u, const PotentialSpec& pot);

// The discrete gradient of J in the quadrature inner product:
//   g = -lap_h u + V u - u log u^2, with 0 log 0 = 0.
Field residual(const Field& u, const PotentialSpec& pot);

// X-norm squared |grad u|^2 + int (V+1)^+ u^2 (the norm of the working space).
double xnorm_sq(const Field& u, const PotentialSpec& pot);

// Signed quadratic form |grad u|^2 + int (V+1) u^2.
double q_form(const Field& u, const PotentialSpec& pot);

struct LogSobolevQuery {
  double a = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // rhs - lhs
};

//   int u^2 log u^2 <= (a^2/pi) |grad u|_2^2
//                     + (log |u|_2^2 - N (1 + log a)) |u|_2^2.
LogSobolevQuery log_sobolev(const Field& u, double a);

// Closed-form minimizer of a -> rhs(a): a* = sqrt(N pi |u|_2^2 / (2 |grad u|_2^2)).
double optimal_a(const Field& u);

// Certified lower bound LB <= 2 J(u):
//   LB = |u|_X^2 / 2 - wmax |u|_2^2 - (log |u|_2^2 - N (1 + log a)) |u|_2^2
// with a = sqrt(pi/2) (gradient coefficient 1/2) and wmax = max (V+1)^-.
double coercivity_bound(const Field& u, const PotentialSpec& pot);

}  // namespace logvar
