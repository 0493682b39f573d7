#include "logvar/flow.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <ostream>

#include "descent_engine.hpp"
#include "logvar/io_util.hpp"
#include "logvar/linalg.hpp"
#include "logvar/nehari.hpp"

namespace logvar {

struct XMetric::Impl {
  // 1D: factored tridiagonal on interior nodes. Else: CG on the stencil.
  std::unique_ptr<TridiagSPD> tri;
};

XMetric::XMetric(const Grid& g, const PotentialSpec& pot) : grid_(g) {
  if (!pot.bound || !(pot.grid == g))
    throw std::invalid_argument("XMetric: potential not bound to grid");
  weight_.resize(g.node_count());
  for (std::size_t i = 0; i < weight_.size(); ++i)
    weight_[i] = pot.vp1_plus[i] + 1.0;

  auto impl = std::make_shared<Impl>();
  if (g.dim == 1) {
    const int n = g.points_per_axis;
    const double inv_h2 = 1.0 / (g.spacing() * g.spacing());
    std::vector<double> diag(n - 2), lower(n - 3, -inv_h2);
    for (int i = 1; i < n - 1; ++i) diag[i - 1] = 2.0 * inv_h2 + weight_[i];
    impl->tri = std::make_unique<TridiagSPD>(std::move(diag), std::move(lower));
  }
  impl_ = std::move(impl);
}

Field XMetric::solve(const Field& g) const {
  if (!(g.grid == grid_)) throw GridError("XMetric::solve: grid mismatch");
  Field out = zero_field(grid_);
  if (grid_.dim == 1) {
    const int n = grid_.points_per_axis;
    std::vector<double> b(g.values.begin() + 1, g.values.end() - 1);
    impl_->tri->solve(b);
    std::copy(b.begin(), b.end(), out.values.begin() + 1);
    (void)n;
    return out;
  }
  const Grid& gr = grid_;
  const double inv_h2 = 1.0 / (gr.spacing() * gr.spacing());
  auto op = [&](const std::vector<double>& in, std::vector<double>& res) {
    for (std::size_t i = 0; i < in.size(); ++i) {
      if (gr.is_boundary(i)) {
        res[i] = 0.0;
        continue;
      }
      double acc = weight_[i] * in[i];
      for (int a = 0; a < gr.dim; ++a) {
        const std::size_t s = gr.stride(a);
        acc += (2.0 * in[i] - in[i - s] - in[i + s]) * inv_h2;
      }
      res[i] = acc;
    }
  };
  cg_solve(op, g.values, out.values, 1e-12);
  enforce_zero_boundary(out);
  return out;
}

namespace detail {

EngineModel log_energy_model(const PotentialSpec& pot) {
  EngineModel m;
  m.energy = [&pot](const Field& u) { return total_energy(u, pot); };
  m.residual = [&pot](const Field& u) { return residual(u, pot); };
  m.project = [&pot](const Field& u) { return project(u, pot).projected; };
  m.xnorm = [&pot](const Field& u) { return std::sqrt(xnorm_sq(u, pot)); };
  if (pot.grid.dim == 1) {
    m.newton_tridiag = [&pot](const Field& u, std::vector<double>& lower,
                              std::vector<double>& diag,
                              std::vector<double>& upper) {
      const int n = u.grid.points_per_axis;
      const double inv_h2 = 1.0 / (u.grid.spacing() * u.grid.spacing());
      lower.assign(n - 3, -inv_h2);
      upper.assign(n - 3, -inv_h2);
      diag.resize(n - 2);
      for (int i = 1; i < n - 1; ++i) {
        const double t = std::max(u.values[i] * u.values[i], 1e-300);
        diag[i - 1] = 2.0 * inv_h2 + pot.samples[i] - std::log(t) - 2.0;
      }
    };
  }
  return m;
}

void sign_normalize(Field& u) {
  std::size_t imax = 0;
  double vmax = 0.0;
  for (std::size_t i = 0; i < u.values.size(); ++i) {
    const double a = std::abs(u.values[i]);
    if (a > vmax) {
      vmax = a;
      imax = i;
    }
  }
  if (vmax > 0.0 && u.values[imax] < 0.0)
    for (double& v : u.values) v = -v;
}

namespace {

struct HistoryPush {
  SolverReport& rep;
  void operator()(double J, double rn, double xn) const {
    rep.energy_history.push_back(J);
    rep.residual_history.push_back(rn);
    rep.norm_history.push_back(xn);
  }
};

}  // namespace

EngineOutcome run_engine(const EngineModel& model, const XMetric& metric,
                         const Field& u0, const EngineOptions& opts) {
  const auto t_start = std::chrono::steady_clock::now();
  EngineOutcome out;
  SolverReport& rep = out.report;
  HistoryPush push{rep};

  auto xn = [&](const Field& f) { return model.xnorm ? model.xnorm(f) : 0.0; };

  auto maybe_sym = [&](Field f) {
    if (opts.parity >= 0) f = symmetrized(f, opts.parity);
    return f;
  };

  Field u = maybe_sym(u0);
  enforce_zero_boundary(u);
  Field g = model.residual(u);
  double rn = norm_l2(g);

  auto finalize = [&](bool converged, const Field& fld) {
    rep.converged = converged;
    rep.ps_epsilon = rn;
    rep.final_J = model.energy(fld);
    rep.final_l2 = norm_l2(fld);
    rep.boundary_mass = boundary_mass_fraction(fld);
    rep.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                      t_start)
            .count();
  };

  if (rn <= opts.tol) {
    push(model.energy(u), rn, xn(u));
    out.field = u;
    finalize(true, u);
    return out;
  }

  u = maybe_sym(model.project(u));
  double Ju = model.energy(u);
  g = model.residual(u);
  rn = norm_l2(g);
  push(Ju, rn, xn(u));

  double tau = opts.step_max;
  const long stall_window = 50;

  while (rep.iterations < opts.max_steps && rn > opts.tol) {
    // plateau of the descent phase: hand over to the Newton finisher
    const std::size_t hlen = rep.residual_history.size();
    const bool can_polish =
        opts.newton_polish && static_cast<bool>(model.newton_tridiag) &&
        u.grid.dim == 1;
    if (can_polish && hlen > static_cast<std::size_t>(stall_window) &&
        rn > 0.9 * rep.residual_history[hlen - 1 - stall_window])
      break;

    const Field d = metric.solve(g);
    const double slope = inner(g, d);
    const double fuzz = 1e-13 * std::max(1.0, std::abs(Ju));

    double t = tau;
    bool accepted = false;
    Field v;
    double Jv = 0.0;
    for (int bs = 0; bs < opts.max_halvings; ++bs) {
      Field w = lin_comb(1.0, u, -t, d);
      if (norm_l2(w) < 1e-14 * norm_l2(u)) {
        t *= opts.backtrack;
        continue;
      }
      w = maybe_sym(model.project(w));
      const double Jw = model.energy(w);
      if (Jw <= Ju - opts.armijo_c * t * slope + fuzz) {
        accepted = true;
        v = std::move(w);
        Jv = Jw;
        break;
      }
      t *= opts.backtrack;
    }
    if (!accepted) {
      if (can_polish) break;
      out.line_search_failed = true;
      out.field = u;
      finalize(false, u);
      return out;
    }
    u = std::move(v);
    Ju = Jv;
    g = model.residual(u);
    rn = norm_l2(g);
    ++rep.iterations;
    push(Ju, rn, xn(u));
    tau = std::min(2.0 * t, opts.step_max);
  }

  // Newton finisher: damped steps on the residual with the projection
  // retraction; keeps the energy history nonincreasing up to round-off.
  if (rn > opts.tol && opts.newton_polish && model.newton_tridiag &&
      u.grid.dim == 1) {
    const int n = u.grid.points_per_axis;
    std::vector<double> lower, diag, upper, step;
    long polish_steps = 0;
    while (rn > opts.tol && polish_steps < opts.polish_cap &&
           rep.iterations < opts.max_steps + opts.polish_cap) {
      model.newton_tridiag(u, lower, diag, upper);
      TridiagLU lu(diag, lower, upper);
      step.assign(g.values.begin() + 1, g.values.end() - 1);
      lu.solve(step);
      Field d = zero_field(u.grid);
      std::copy(step.begin(), step.end(), d.values.begin() + 1);

      const double fuzz = 1e-13 * std::max(1.0, std::abs(Ju));
      double t = 1.0;
      bool accepted = false;
      Field v;
      double Jv = 0.0, rv = 0.0;
      for (int bs = 0; bs < 40; ++bs) {
        Field w = maybe_sym(model.project(lin_comb(1.0, u, -t, d)));
        const double rw = norm_l2(model.residual(w));
        const double Jw = model.energy(w);
        if (rw <= (1.0 - 1e-4 * t) * rn && Jw <= Ju + fuzz) {
          accepted = true;
          v = std::move(w);
          Jv = Jw;
          rv = rw;
          break;
        }
        t *= 0.5;
      }
      if (!accepted) break;
      u = std::move(v);
      Ju = Jv;
      g = model.residual(u);
      rn = rv;
      ++rep.iterations;
      ++polish_steps;
      push(Ju, rn, xn(u));
    }
    (void)n;
  }

  out.field = u;
  finalize(rn <= opts.tol, u);
  return out;
}

}  // namespace detail

DescendResult descend(const Field& u0, const PotentialSpec& pot,
                      const DescendOptions& opts) {
  PotentialSpec gated = pot.bound ? pot : bind(pot, u0.grid);
  spectral_gate(gated);
  if (!gated.coercive() && !(*gated.lambda1 > 0.0))
    throw std::invalid_argument(
        "descend: spectrum of -lap + V + 1 is not positive (lambda_1 <= 0)");

  const XMetric metric(u0.grid, gated);
  detail::EngineModel model = detail::log_energy_model(gated);
  detail::EngineOptions eo;
  eo.tol = opts.tol;
  eo.max_steps = opts.max_steps;
  eo.armijo_c = opts.armijo_c;
  eo.backtrack = opts.backtrack;
  eo.step_max = opts.step_max;
  eo.max_halvings = opts.max_halvings;
  eo.newton_polish = opts.newton_polish;
  eo.polish_cap = opts.polish_cap;

  detail::EngineOutcome rr = detail::run_engine(model, metric, u0, eo);
  if (rr.line_search_failed)
    throw SolverError("descend: line search failed before reaching tolerance",
                      rr.report);
  return DescendResult{std::move(rr.field), std::move(rr.report)};
}

PsSummary ps_diagnostic(const SolverReport& rep, const PotentialSpec& pot) {
  if (rep.energy_history.empty())
    throw std::invalid_argument("ps_diagnostic: empty report");
  PsSummary s;
  s.sup_J = *std::max_element(rep.energy_history.begin(),
                              rep.energy_history.end());
  s.eps = *std::max_element(rep.residual_history.begin(),
                            rep.residual_history.end());
  const double d = std::max(s.sup_J, 0.0);
  // |u|_2^2 = 2J - <J'(u),u> <= 2d + eps |u|_2
  s.l2_cap = 0.5 * (s.eps + std::sqrt(s.eps * s.eps + 8.0 * d));
  const double m2 = s.l2_cap * s.l2_cap;
  const double a = std::sqrt(M_PI / 2.0);
  const double K = pot.grid.dim * (1.0 + std::log(a));
  const double wmax =
      pot.vp1_minus.empty()
          ? 0.0
          : *std::max_element(pot.vp1_minus.begin(), pot.vp1_minus.end());
  const double phi_at = m2 > 0.0 ? (std::log(m2) - K) * m2 : 0.0;
  s.norm_cap = std::sqrt(
      std::max(0.0, 2.0 * (2.0 * d + wmax * m2 + std::max(phi_at, 0.0))));
  s.observed_max_norm =
      rep.norm_history.empty()
          ? 0.0
          : *std::max_element(rep.norm_history.begin(), rep.norm_history.end());
  s.within = s.observed_max_norm <= s.norm_cap * (1.0 + 1e-9) + 1e-12;
  return s;
}

void export_history_csv(std::ostream& os, const std::vector<double>& history) {
  os << "step,value\n";
  for (std::size_t i = 0; i < history.size(); ++i)
    os << i << "," << format_double(history[i]) << "\n";
}

}  // namespace logvar
