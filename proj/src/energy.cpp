#include "logvar/energy.hpp"

#include <algorithm>
#include <cmath>

namespace logvar {

namespace {

// s^2 log s^2 extended by 0 at s = 0 (also guards squared underflow).
inline double s2logs2(double s) {
  const double t = s * s;
  return t > 0.0 ? t * std::log(t) : 0.0;
}

// s log s^2 with the same convention.
inline double slogs2(double s) {
  const double t = s * s;
  return t > 0.0 ? s * std::log(t) : 0.0;
}

void require_bound(const PotentialSpec& pot, const Field& u, const char* where) {
  if (!pot.bound || !(pot.grid == u.grid))
    throw std::invalid_argument(std::string(where) +
                                ": potential not bound to the field's grid");
}

}  // namespace

void validate(const EnergySplitParams& p) {
  const double dmax = std::exp(-1.5);
  if (!(p.delta > 0.0) || !(p.delta <= dmax))
    throw std::invalid_argument("delta must lie in (0, e^{-3/2}]");
  if (!(p.p_growth > 2.0))
    throw std::invalid_argument("p_growth must exceed 2");
}

double f1(double s, const EnergySplitParams& p) {
  const double as = std::abs(s);
  if (as < p.delta) return -0.5 * s2logs2(s);
  const double d = p.delta;
  return -0.5 * s * s * (std::log(d * d) + 3.0) + 2.0 * d * as - 0.5 * d * d;
}

double f1_prime(double s, const EnergySplitParams& p) {
  const double as = std::abs(s);
  if (as < p.delta) {
    if (s == 0.0) return 0.0;
    return -slogs2(s) - s;
  }
  const double d = p.delta;
  const double sgn = s > 0 ? 1.0 : -1.0;
  return -s * (std::log(d * d) + 3.0) + 2.0 * d * sgn;
}

double f2(double s, const EnergySplitParams& p) {
  if (std::abs(s) < p.delta) return 0.0;
  return 0.5 * s2logs2(s) + f1(s, p);
}

double f2_prime(double s, const EnergySplitParams& p) {
  if (std::abs(s) < p.delta) return 0.0;
  return slogs2(s) + s + f1_prime(s, p);
}

EnergyBreakdown evaluate(const Field& u, const PotentialSpec& pot,
                         const EnergySplitParams& params) {
  require_bound(pot, u, "evaluate");
  validate(params);
  const Grid& g = u.grid;

  EnergyBreakdown b;
  b.kinetic = 0.5 * grad_norm_sq(u);

  double pp = 0.0, pm = 0.0, lt = 0.0, psi = 0.0, f2i = 0.0;
  for (std::size_t i = 0; i < u.values.size(); ++i) {
    const double w = g.quad_weight(i);
    const double v = u.values[i];
    pp += w * pot.vp1_plus[i] * v * v;
    pm += w * pot.vp1_minus[i] * v * v;
    lt += w * s2logs2(v);
    psi += w * f1(v, params);
    f2i += w * f2(v, params);
  }
  b.potential_plus = 0.5 * pp;
  b.potential_minus = 0.5 * pm;
  b.log_term = 0.5 * lt;
  b.psi = psi;
  b.phi = b.kinetic + b.potential_plus - b.potential_minus - f2i;
  b.total_J = b.kinetic + b.potential_plus - b.potential_minus - b.log_term;

  const char* names[] = {"kinetic",   "potential_plus", "potential_minus",
                         "log_term",  "phi",            "psi",
                         "total_J"};
  const double vals[] = {b.kinetic,  b.potential_plus, b.potential_minus,
                         b.log_term, b.phi,            b.psi,
                         b.total_J};
  for (int i = 0; i < 7; ++i)
    if (!std::isfinite(vals[i]))
      throw EnergyError(std::string("non-finite energy term: ") + names[i]);
  return b;
}

double total_energy(const Field& u, const PotentialSpec& pot) {
  require_bound(pot, u, "total_energy");
  const Grid& g = u.grid;
  double quad = 0.0;
  for (std::size_t i = 0; i < u.values.size(); ++i) {
    const double v = u.values[i];
    quad += g.quad_weight(i) *
            ((pot.samples[i] + 1.0) * v * v - s2logs2(v));
  }
  return 0.5 * grad_norm_sq(u) + 0.5 * quad;
}

Field residual(const Field& u, const PotentialSpec& pot) {
  require_bound(pot, u, "residual");
  const Grid& g = u.grid;
  const double inv_h2 = 1.0 / (g.spacing() * g.spacing());
  Field out = zero_field(g);
  for (std::size_t i = 0; i < u.values.size(); ++i) {
    if (g.is_boundary(i)) continue;
    double acc = pot.samples[i] * u.values[i] - slogs2(u.values[i]);
    for (int a = 0; a < g.dim; ++a) {
      const std::size_t s = g.stride(a);
      acc += (2.0 * u.values[i] - u.values[i - s] - u.values[i + s]) * inv_h2;
    }
    out.values[i] = acc;
  }
  return out;
}

double xnorm_sq(const Field& u, const PotentialSpec& pot) {
  require_bound(pot, u, "xnorm_sq");
  double acc = 0.0;
  for (std::size_t i = 0; i < u.values.size(); ++i)
    acc += u.grid.quad_weight(i) * pot.vp1_plus[i] * u.values[i] * u.values[i];
  return grad_norm_sq(u) + acc;
}

double q_form(const Field& u, const PotentialSpec& pot) {
  require_bound(pot, u, "q_form");
  double acc = 0.0;
  for (std::size_t i = 0; i < u.values.size(); ++i)
    acc += u.grid.quad_weight(i) * (pot.samples[i] + 1.0) * u.values[i] *
           u.values[i];
  return grad_norm_sq(u) + acc;
}

LogSobolevQuery log_sobolev(const Field& u, double a) {
  if (!(a > 0.0)) throw std::invalid_argument("log_sobolev: a > 0 required");
  const double m2 = inner(u, u);
  if (m2 <= 0.0)
    throw EnergyError("log_sobolev: zero field (log |u|_2^2 undefined)");
  double lhs = 0.0;
  for (std::size_t i = 0; i < u.values.size(); ++i)
    lhs += u.grid.quad_weight(i) * s2logs2(u.values[i]);
  const double gn = grad_norm_sq(u);
  const int N = u.grid.dim;
  LogSobolevQuery q;
  q.a = a;
  q.lhs = lhs;
  q.rhs = (a * a / M_PI) * gn + (std::log(m2) - N * (1.0 + std::log(a))) * m2;
  q.slack = q.rhs - q.lhs;
  return q;
}

double optimal_a(const Field& u) {
  const double m2 = inner(u, u);
  if (m2 <= 0.0) throw EnergyError("optimal_a: zero field");
  const double gn = grad_norm_sq(u);
  if (gn <= 0.0) throw EnergyError("optimal_a: zero gradient");
  return std::sqrt(u.grid.dim * M_PI * m2 / (2.0 * gn));
}

double coercivity_bound(const Field& u, const PotentialSpec& pot) {
  require_bound(pot, u, "coercivity_bound");
  const double m2 = inner(u, u);
  if (m2 <= 0.0) throw EnergyError("coercivity_bound: zero field");
  const double a = std::sqrt(M_PI / 2.0);  // makes the gradient coefficient 1/2
  const double wmax =
      *std::max_element(pot.vp1_minus.begin(), pot.vp1_minus.end());
  const int N = u.grid.dim;
  return 0.5 * xnorm_sq(u, pot) - wmax * m2 -
         (std::log(m2) - N * (1.0 + std::log(a))) * m2;
}

}  // namespace logvar
