#include "logvar/nehari.hpp"

#include <cmath>

#include "descent_engine.hpp"
#include "logvar/io_util.hpp"

namespace logvar {

namespace {

inline double s2logs2(double s) {
  const double t = s * s;
  return t > 0.0 ? t * std::log(t) : 0.0;
}

}  // namespace

NehariProjection project(const Field& u, const PotentialSpec& pot) {
  if (!pot.bound || !(pot.grid == u.grid))
    throw std::invalid_argument("project: potential not bound to the field's grid");
  if (!pot.coercive()) {
    if (!pot.lambda1)
      throw std::invalid_argument(
          "project: run spectral_gate first (signed form needs lambda_1 > 0)");
    if (!(*pot.lambda1 > 0.0))
      throw std::invalid_argument(
          "project: spectrum of -lap + V + 1 is not positive; "
          "the Nehari ray has no admissible intersection");
  }

  const double m2 = inner(u, u);
  if (m2 <= 0.0) throw EnergyError("zero field has no Nehari ray");

  double slog = 0.0;
  for (std::size_t i = 0; i < u.values.size(); ++i)
    slog += u.grid.quad_weight(i) * s2logs2(u.values[i]);

  const double Q = q_form(u, pot);
  const double log_s2 = (Q - slog - m2) / m2;
  if (log_s2 > 1400.0)
    throw EnergyError("project: Nehari scale overflows double range");

  NehariProjection out;
  out.scale = std::exp(0.5 * log_s2);
  out.projected = scaled(u, out.scale);
  out.q_form = Q;
  // phi'_u(s) = s (Q - int u^2 (log s^2 + log u^2 + 1))
  out.phi_prime_at_scale = out.scale * (Q - slog - m2 - m2 * log_s2);
  return out;
}

Field default_init(const Grid& g) {
  return sample_field(g, [&](const std::array<double, 3>& x) {
    double r2 = 0.0;
    for (int a = 0; a < g.dim; ++a) r2 += x[a] * x[a];
    return std::exp(-0.5 * r2);
  });
}

GroundResult ground_state(const PotentialSpec& pot, const Field& init,
                          const GroundOptions& opts) {
  PotentialSpec gated = pot.bound && pot.grid == init.grid
                            ? pot
                            : bind(pot, init.grid);
  spectral_gate(gated);
  if (!gated.coercive() && !(*gated.lambda1 > 0.0))
    throw std::invalid_argument(
        "ground_state: spectral gate failed (lambda_1 <= 0); Theorem-2 kind "
        "requires a positive spectrum");

  const XMetric metric(init.grid, gated);
  detail::EngineModel model = detail::log_energy_model(gated);
  detail::EngineOptions eo;
  eo.tol = opts.tol;
  eo.max_steps = opts.max_iters;

  detail::EngineOutcome rr = detail::run_engine(model, metric, init, eo);
  if (rr.line_search_failed)
    throw SolverError("ground_state: line search failed", rr.report);
  if (!rr.report.converged)
    throw SolverError("ground_state: iteration cap reached at residual " +
                          format_double(rr.report.ps_epsilon),
                      rr.report);

  detail::sign_normalize(rr.field);
  GroundResult res;
  res.energy = evaluate(rr.field, gated);
  res.field = std::move(rr.field);
  res.report = std::move(rr.report);
  return res;
}

}  // namespace logvar
