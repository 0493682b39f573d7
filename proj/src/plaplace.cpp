#include "logvar/plaplace.hpp"

#include <algorithm>
#include <cmath>

#include "descent_engine.hpp"
#include "logvar/energy.hpp"

namespace logvar {

namespace {

constexpr double kFluxEps = 1e-12;  // degenerate-diffusion guard at p < 2

inline double flux(double du, double p) {
  return std::pow(du * du + kFluxEps * kFluxEps, 0.5 * (p - 2.0)) * du;
}

inline double flux_prime(double du, double p) {
  const double q = du * du + kFluxEps * kFluxEps;
  return std::pow(q, 0.5 * (p - 4.0)) * ((p - 1.0) * du * du +
                                         kFluxEps * kFluxEps);
}

// |u|^p log |u|^p with the 0 log 0 = 0 convention.
inline double tp_logtp(double u, double p) {
  const double t = std::abs(u);
  if (t == 0.0) return 0.0;
  const double tp = std::pow(t, p);
  return tp > 0.0 ? tp * (p * std::log(t)) : 0.0;
}

void require_bound(const PotentialSpec& pot, const Field& u, const char* where) {
  if (!pot.bound || !(pot.grid == u.grid))
    throw std::invalid_argument(std::string(where) +
                                ": potential not bound to the field's grid");
}

double link_sum_p(const Field& u, double p) {
  const Grid& g = u.grid;
  const int n = g.points_per_axis;
  const double h = g.spacing();
  const double hpow = std::pow(h, g.dim - p);
  double acc = 0.0;
  for (int a = 0; a < g.dim; ++a) {
    const std::size_t s = g.stride(a);
    for (std::size_t i = 0; i < u.values.size(); ++i) {
      if (g.axis_index(i, a) == n - 1) continue;
      acc += std::pow(std::abs(u.values[i + s] - u.values[i]), p);
    }
  }
  return hpow * acc;
}

}  // namespace

void validate_p(const PExponent& pe, int dim) {
  if (!(pe.p > 1.0)) throw std::invalid_argument("p must exceed 1");
  if (dim >= 2 && pe.p != 2.0 && !(pe.p < dim))
    throw std::invalid_argument("p < dim required for dim >= 2");
  if (!(pe.q_growth > pe.p))
    throw std::invalid_argument("q_growth must exceed p");
}

double p_norm_p(const Field& u, double p) {
  double acc = 0.0;
  for (std::size_t i = 0; i < u.values.size(); ++i)
    acc += u.grid.quad_weight(i) * std::pow(std::abs(u.values[i]), p);
  return acc;
}

double p_q_form(const Field& u, const PotentialSpec& pot, const PExponent& pe) {
  require_bound(pot, u, "p_q_form");
  double acc = 0.0;
  for (std::size_t i = 0; i < u.values.size(); ++i)
    acc += u.grid.quad_weight(i) * (pot.samples[i] + 1.0) *
           std::pow(std::abs(u.values[i]), pe.p);
  return link_sum_p(u, pe.p) + acc;
}

double p_energy(const Field& u, const PotentialSpec& pot, const PExponent& pe) {
  require_bound(pot, u, "p_energy");
  validate_p(pe, u.grid.dim);
  double logpart = 0.0;
  for (std::size_t i = 0; i < u.values.size(); ++i)
    logpart += u.grid.quad_weight(i) * tp_logtp(u.values[i], pe.p);
  return (p_q_form(u, pot, pe) - logpart) / pe.p;
}

Field p_residual(const Field& u, const PotentialSpec& pot,
                 const PExponent& pe) {
  require_bound(pot, u, "p_residual");
  validate_p(pe, u.grid.dim);
  const Grid& g = u.grid;
  const double p = pe.p;
  const double hpow = std::pow(g.spacing(), -p);
  Field out = zero_field(g);
  for (std::size_t i = 0; i < u.values.size(); ++i) {
    if (g.is_boundary(i)) continue;
    double acc = 0.0;
    for (int a = 0; a < g.dim; ++a) {
      const std::size_t s = g.stride(a);
      acc += flux(u.values[i] - u.values[i - s], p) -
             flux(u.values[i + s] - u.values[i], p);
    }
    acc *= hpow;
    const double v = u.values[i];
    const double t = std::abs(v);
    if (t > 0.0) {
      const double sgn = v > 0 ? 1.0 : -1.0;
      acc += sgn * std::pow(t, p - 1.0) *
             (pot.samples[i] - p * std::log(t));
    }
    out.values[i] = acc;
  }
  return out;
}

double p_nehari_scale(const Field& u, const PotentialSpec& pot,
                      const PExponent& pe) {
  require_bound(pot, u, "p_nehari_scale");
  validate_p(pe, u.grid.dim);
  const double np = p_norm_p(u, pe.p);
  if (np <= 0.0) throw EnergyError("zero field has no Nehari ray");
  double logpart = 0.0;
  for (std::size_t i = 0; i < u.values.size(); ++i)
    logpart += u.grid.quad_weight(i) * tp_logtp(u.values[i], pe.p);
  const double log_sp = (p_q_form(u, pot, pe) - logpart - np) / np;
  if (log_sp > 1400.0)
    throw EnergyError("p_nehari_scale: scale overflows double range");
  return std::exp(log_sp / pe.p);
}

double p_assumption_margin(const PotentialSpec& pot, const Grid& g,
                           const PExponent& pe, int k) {
  PotentialSpec bp = pot.bound && pot.grid == g ? pot : bind(pot, g);
  const SpectrumInfo spec = lowest_eigenpairs(bp, g, k);
  double margin = std::numeric_limits<double>::infinity();
  for (const Field& phi : spec.eigenfields)
    margin = std::min(margin, p_q_form(phi, bp, pe) / p_norm_p(phi, pe.p));
  return margin;
}

PGroundResult p_ground_state(const PotentialSpec& pot, const Field& init,
                             const PExponent& pe, double tol, long max_iters) {
  validate_p(pe, init.grid.dim);
  PotentialSpec gated = pot.bound && pot.grid == init.grid
                            ? pot
                            : bind(pot, init.grid);
  spectral_gate(gated);
  const XMetric metric(init.grid, gated);

  detail::EngineModel model;
  model.energy = [&](const Field& u) { return p_energy(u, gated, pe); };
  model.residual = [&](const Field& u) { return p_residual(u, gated, pe); };
  model.project = [&](const Field& u) {
    return scaled(u, p_nehari_scale(u, gated, pe));
  };
  model.xnorm = [&](const Field& u) { return std::sqrt(xnorm_sq(u, gated)); };
  if (init.grid.dim == 1) {
    model.newton_tridiag = [&gated, pe](const Field& u,
                                        std::vector<double>& lower,
                                        std::vector<double>& diag,
                                        std::vector<double>& upper) {
      const Grid& g = u.grid;
      const int n = g.points_per_axis;
      const double p = pe.p;
      const double hpow = std::pow(g.spacing(), -p);
      lower.resize(n - 3);
      upper.resize(n - 3);
      diag.resize(n - 2);
      for (int i = 1; i < n - 1; ++i) {
        const double fl = flux_prime(u.values[i] - u.values[i - 1], p);
        const double fr = flux_prime(u.values[i + 1] - u.values[i], p);
        diag[i - 1] = hpow * (fl + fr);
        if (i > 1) lower[i - 2] = -hpow * fl;
        if (i < n - 2) upper[i - 1] = -hpow * fr;
        const double t = std::max(std::abs(u.values[i]), 1e-150);
        diag[i - 1] += std::pow(t, p - 2.0) *
                       ((p - 1.0) * (gated.samples[i] - p * std::log(t)) - p);
      }
    };
  }

  detail::EngineOptions eo;
  eo.tol = tol;
  eo.max_steps = max_iters;
  detail::EngineOutcome rr = detail::run_engine(model, metric, init, eo);
  if (rr.line_search_failed)
    throw SolverError("p_ground_state: line search failed", rr.report);
  if (!rr.report.converged)
    throw SolverError("p_ground_state: iteration cap reached", rr.report);
  detail::sign_normalize(rr.field);
  PGroundResult res;
  res.total_J = p_energy(rr.field, gated, pe);
  res.field = std::move(rr.field);
  res.report = std::move(rr.report);
  return res;
}

}  // namespace logvar
