#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "logvar/grid.hpp"

namespace logvar {

enum class PotentialKind { constant, gaussian_well, harmonic, table };

std::string to_string(PotentialKind k);

// The potential V, its value at infinity, and (once bound to a grid) the
// nodewise samples of V, (V+1)^+ and (V+1)^-.
struct PotentialSpec {
  PotentialKind kind = PotentialKind::constant;
  double v_infinity = 0.0;  // +inf for the coercive (harmonic) case
  double depth = 0.5;       // gaussian_well: V = V_inf - depth * exp(-|x|^2/sigma^2)
  double sigma = 1.0;
  double coefficient = 1.0;  // harmonic: V = coefficient * |x|^2
  std::vector<double> table;

  bool bound = false;
  Grid grid;
  std::vector<double> samples;
  std::vector<double> vp1_plus;
  std::vector<double> vp1_minus;

  // Cached lambda_1 of -lap + (V+1), set by spectral_gate().
  std::optional<double> lambda1;

  bool coercive() const { return kind == PotentialKind::harmonic; }
};

PotentialSpec constant_potential(double value);
PotentialSpec gaussian_well(double depth, double sigma, double v_infinity);
PotentialSpec harmonic_potential(double coefficient);
PotentialSpec table_potential(std::vector<double> samples, double v_infinity);

double potential_value(const PotentialSpec& p, const std::array<double, 3>& x,
                       int dim);

PotentialSpec bind(const PotentialSpec& p, const Grid& g);

struct SpectrumInfo {
  std::vector<double> eigenvalues;  // ascending
  std::vector<Field> eigenfields;   // quadrature-orthonormal
  std::vector<double> residuals;    // ||A phi - lambda phi||_2 per pair
  int k = 0;
};

class EigensolveError : public std::runtime_error {
 public:
  EigensolveError(const std::string& what, double best_residual)
      : std::runtime_error(what), best_residual(best_residual) {}
  double best_residual;
};

// k smallest eigenpairs of -lap_h + weight, shifted inverse iteration with
// Gram-Schmidt deflation. Residual target 1e-8 relative, cap 10000.
SpectrumInfo lowest_eigenpairs_weighted(const Grid& g,
                                        const std::vector<double>& weight,
                                        int k);

// Same, for the signed operator -lap_h + (V+1) of a bound potential.
SpectrumInfo lowest_eigenpairs(const PotentialSpec& p, const Grid& g, int k);

struct PositivityResult {
  bool positive;
  double margin;  // lambda_1
};

PositivityResult positivity_check(const SpectrumInfo& s);

// Computes and caches lambda_1 of -lap + (V+1); coercive kinds pass without
// an eigensolve. Returns the margin (lambda_1, or +inf when coercive).
double spectral_gate(PotentialSpec& p);

}  // namespace logvar
