#include "logvar/multisol.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "descent_engine.hpp"
#include "logvar/energy.hpp"
#include "logvar/flow.hpp"
#include "logvar/linalg.hpp"
#include "logvar/nehari.hpp"
#include "logvar/random_fields.hpp"

namespace logvar {

namespace {

// Fit C2, C3 covering (1/4)|u|^2 - J(u) <= C2 |u|_2^p + C3 on seeded random
// fields rescaled across a range of X-norms.
void fit_b_constants(const PotentialSpec& pot, const Grid& g, double p,
                     double& c2, double& c3) {
  std::mt19937_64 rng(0xb0b0b0b0ULL);
  struct Sample {
    double excess, l2;
  };
  std::vector<Sample> samples;
  for (int shape = 0; shape < 8; ++shape) {
    Field u = random_bump_field(g, rng);
    const double xn = std::sqrt(xnorm_sq(u, pot));
    if (xn <= 0.0) continue;
    for (int j = 0; j < 24; ++j) {
      const double target = 0.5 * std::pow(100.0 / 0.5, j / 23.0);
      const Field su = scaled(u, target / xn);
      const double excess = 0.25 * target * target - total_energy(su, pot);
      samples.push_back({excess, norm_l2(su)});
    }
  }
  c3 = 0.0;
  for (const auto& s : samples)
    if (s.l2 <= 1.0) c3 = std::max(c3, s.excess);
  c2 = 0.0;
  for (const auto& s : samples)
    if (s.l2 > 1.0)
      c2 = std::max(c2, (s.excess - c3) / std::pow(s.l2, p));
}

}  // namespace

FountainScaffold build_scaffold(const PotentialSpec& pot, const Grid& g,
                                int k_max) {
  if (!pot.coercive())
    throw std::invalid_argument(
        "build_scaffold: requires a coercive potential kind");
  if (k_max < 1) throw std::invalid_argument("build_scaffold: k_max >= 1");
  PotentialSpec bp = pot.bound && pot.grid == g ? pot : bind(pot, g);

  std::vector<double> weight = bp.vp1_plus;
  FountainScaffold s;
  s.k_max = k_max;
  SpectrumInfo spec = lowest_eigenpairs_weighted(g, weight, k_max);
  s.eigenvalues = spec.eigenvalues;
  s.eigenfields = std::move(spec.eigenfields);

  fit_b_constants(bp, g, 3.0, s.c2_fitted, s.c3_fitted);

  std::mt19937_64 rng(0xa11a11ULL);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int k = 1; k <= k_max; ++k) {
    const double lam = s.eigenvalues[k - 1];
    if (!(lam > 0.0))
      throw std::invalid_argument("build_scaffold: nonpositive eigenvalue");
    const double beta = 1.0 / std::sqrt(lam);
    const double r = 1.0 / beta;
    s.beta.push_back(beta);
    s.r.push_back(r);
    s.rho.push_back(10.0 * r);
    s.b_estimates.push_back(0.25 * r * r - s.c2_fitted - s.c3_fitted);

    // sampled sphere maximum of J on |u| = rho_k in X_k
    double amax = -std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < 16; ++trial) {
      Field u = zero_field(g);
      for (int j = 0; j < k; ++j) {
        const double c = gauss(rng);
        u = lin_comb(1.0, u, c, s.eigenfields[j]);
      }
      const double xn = std::sqrt(xnorm_sq(u, bp));
      if (xn <= 0.0) continue;
      amax = std::max(amax, total_energy(scaled(u, s.rho.back() / xn), bp));
    }
    s.a_estimates.push_back(amax);
  }
  return s;
}

namespace {

struct NewtonOptions {
  double tol = 1e-6;
  long cap = 200;
  int parity = -1;
  const std::vector<Field>* deflate = nullptr;  // +-pairs
};

// Damped Newton on the residual; 1D tridiagonal Jacobian. Deflation uses the
// factor M(u) = prod_j (1 + 1/|u - u_j|_2^2)(1 + 1/|u + u_j|_2^2); the
// deflated step is the plain step scaled by 1/(1 + <grad M, d>/M).
bool newton_solve(Field& u, const PotentialSpec& pot, const NewtonOptions& no) {
  const Grid& g = u.grid;
  if (g.dim != 1) return false;
  const int n = g.points_per_axis;
  const double inv_h2 = 1.0 / (g.spacing() * g.spacing());

  Field gres = residual(u, pot);
  double rn = norm_l2(gres);
  std::vector<double> lower(n - 3, -inv_h2), upper(n - 3, -inv_h2),
      diag(n - 2), step;
  for (long it = 0; it < no.cap; ++it) {
    if (rn <= no.tol) return true;
    for (int i = 1; i < n - 1; ++i) {
      const double t = std::max(u.values[i] * u.values[i], 1e-300);
      diag[i - 1] = 2.0 * inv_h2 + pot.samples[i] - std::log(t) - 2.0;
    }
    TridiagLU lu(diag, lower, upper);
    step.assign(gres.values.begin() + 1, gres.values.end() - 1);
    lu.solve(step);
    Field d = zero_field(g);
    std::copy(step.begin(), step.end(), d.values.begin() + 1);

    if (no.deflate && !no.deflate->empty()) {
      // deflated step = d / (1 + <grad log M, d>) for M = prod (1 + 1/q)
      double grad_dot = 0.0;
      bool too_close = false;
      for (const Field& uj : *no.deflate) {
        for (double sgn : {1.0, -1.0}) {
          const Field diff = lin_comb(1.0, u, -sgn, uj);
          const double q = inner(diff, diff);
          if (q < 1e-12) {
            too_close = true;
            break;
          }
          grad_dot += (-2.0 / (q * q)) * inner(diff, d) / (1.0 + 1.0 / q);
        }
        if (too_close) break;
      }
      if (too_close) return false;
      const double denom = 1.0 + grad_dot;
      if (std::abs(denom) > 1e-10) d = scaled(d, 1.0 / denom);
    }

    double t = 1.0;
    bool accepted = false;
    for (int bs = 0; bs < 50; ++bs) {
      Field v = lin_comb(1.0, u, -t, d);
      if (no.parity >= 0) v = symmetrized(v, no.parity);
      enforce_zero_boundary(v);
      Field gv = residual(v, pot);
      const double rv = norm_l2(gv);
      if (rv <= (1.0 - 1e-4 * t) * rn) {
        u = std::move(v);
        gres = std::move(gv);
        rn = rv;
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) return false;
  }
  return rn <= no.tol;
}

// Warmup: a few parity-restricted Nehari-descent steps from the given init.
Field warmup_descent(const Field& init, const PotentialSpec& pot,
                     const XMetric& metric, int parity, long steps,
                     double tol) {
  detail::EngineModel model = detail::log_energy_model(pot);
  detail::EngineOptions eo;
  eo.tol = tol;
  eo.max_steps = steps;
  eo.parity = parity;
  eo.newton_polish = false;
  detail::EngineOutcome out = detail::run_engine(model, metric, init, eo);
  return out.field;
}

bool distinct_from(const Field& u, const std::vector<SolutionEntry>& found,
                   double rel) {
  for (const auto& e : found) {
    const double s =
        rel * std::max(norm_l2(u), norm_l2(e.field));
    if (norm_l2(lin_comb(1.0, u, -1.0, e.field)) < s ||
        norm_l2(lin_comb(1.0, u, 1.0, e.field)) < s)
      return false;
  }
  return true;
}

// Recursively obtains an init for the m-th sector solution by solving on a
// coarser grid and interpolating.
bool coarse_continuation(Field& u, const PotentialSpec& pot, int m, int parity,
                         const MultisolOptions& opts, int depth);

bool solve_sector(Field& u, const PotentialSpec& pot, int m, int parity,
                  const std::vector<Field>& same_parity_found,
                  const XMetric& metric, const MultisolOptions& opts) {
  // stage 1: warmup descent + plain Newton
  Field cand = warmup_descent(u, pot, metric, parity, opts.warmup_steps,
                              opts.tol);
  NewtonOptions no;
  no.tol = opts.tol;
  no.cap = opts.newton_cap;
  no.parity = parity;
  Field polished = cand;
  if (newton_solve(polished, pot, no) &&
      nodal_count(polished) == m) {
    u = polished;
    return true;
  }
  // stage 2: deflated Newton from the projected eigenfield init
  no.deflate = &same_parity_found;
  polished = project(u, pot).projected;
  polished = symmetrized(polished, parity);
  if (newton_solve(polished, pot, no) && nodal_count(polished) == m) {
    u = polished;
    return true;
  }
  // stage 3: coarse-grid continuation
  Field cont = u;
  if (coarse_continuation(cont, pot, m, parity, opts, 0)) {
    no.deflate = nullptr;
    if (newton_solve(cont, pot, no) && nodal_count(cont) == m) {
      u = cont;
      return true;
    }
  }
  return false;
}

bool coarse_continuation(Field& u, const PotentialSpec& pot, int m, int parity,
                         const MultisolOptions& opts, int depth) {
  const Grid& g = u.grid;
  if (depth >= 2 || g.points_per_axis < 241 || g.dim != 1) return false;
  const Grid coarse = make_grid(g.dim, g.half_width,
                                (g.points_per_axis + 1) / 2);
  PotentialSpec cpot = bind(pot, coarse);
  spectral_gate(cpot);
  FountainScaffold cs = build_scaffold(cpot, coarse, m + 1);
  const XMetric cmetric(coarse, cpot);

  std::vector<Field> cfound;  // found same-parity solutions, recomputed coarse
  for (int mm = parity; mm < m; mm += 2) {
    Field cu = symmetrized(cs.eigenfields[mm], parity);
    if (solve_sector(cu, cpot, mm, parity, cfound, cmetric, opts))
      cfound.push_back(cu);
  }
  Field cu = symmetrized(cs.eigenfields[m], parity);
  if (!solve_sector(cu, cpot, m, parity, cfound, cmetric, opts)) {
    if (!coarse_continuation(cu, cpot, m, parity, opts, depth + 1))
      return false;
  }
  u = interp_refine(cu);
  return true;
}

}  // namespace

SolutionSet find_solutions(const PotentialSpec& pot,
                           const FountainScaffold& scaffold, int count,
                           MultiStrategy strategy,
                           const MultisolOptions& opts) {
  if (count < 1) throw std::invalid_argument("find_solutions: count >= 1");
  if (scaffold.k_max < count)
    throw std::invalid_argument("find_solutions: scaffold too small for count");
  const Grid g = scaffold.eigenfields.front().grid;
  PotentialSpec bp = pot.bound && pot.grid == g ? pot : bind(pot, g);
  spectral_gate(bp);
  const XMetric metric(g, bp);

  SolutionSet set;
  std::mt19937_64 rng(opts.seed ^ 0x5eedf00dULL);

  if (strategy == MultiStrategy::symmetry) {
    if (g.dim != 1)
      throw std::invalid_argument("symmetry strategy is 1D only");
    for (int m = 0; m < count; ++m) {
      const int parity = m % 2;
      std::vector<Field> same_parity;
      for (const auto& e : set.entries)
        if (e.nodal_count % 2 == parity) same_parity.push_back(e.field);

      Field u = symmetrized(scaffold.eigenfields[m], parity);
      bool ok = solve_sector(u, bp, m, parity, same_parity, metric, opts);
      if (ok && !distinct_from(u, set.entries, opts.separation_rel)) ok = false;
      if (!ok) {
        set.complete = false;
        set.warning = "failed to separate solution with nodal count " +
                      std::to_string(m);
        break;
      }
      detail::sign_normalize(u);
      SolutionEntry e;
      e.total_J = total_energy(u, bp);
      e.nodal_count = nodal_count(u);
      e.residual_norm = norm_l2(residual(u, bp));
      e.field = std::move(u);
      set.entries.push_back(std::move(e));
    }
  } else {
    std::vector<Field> found;
    for (int j = 0; j < count; ++j) {
      bool placed = false;
      for (int attempt = 0; attempt <= opts.retries && !placed; ++attempt) {
        Field init = attempt == 0 && j < scaffold.k_max
                         ? scaffold.eigenfields[j]
                         : random_bump_field(g, rng);
        Field u = project(init, bp).projected;
        NewtonOptions no;
        no.tol = opts.tol;
        no.cap = opts.newton_cap;
        no.deflate = &found;
        if (!newton_solve(u, bp, no)) continue;
        if (!distinct_from(u, set.entries, opts.separation_rel)) continue;
        detail::sign_normalize(u);
        SolutionEntry e;
        e.total_J = total_energy(u, bp);
        e.nodal_count = nodal_count(u);
        e.residual_norm = norm_l2(residual(u, bp));
        e.field = u;
        set.entries.push_back(std::move(e));
        found.push_back(std::move(u));
        placed = true;
      }
      if (!placed) {
        set.complete = false;
        set.warning = "deflation search exhausted retries at solution " +
                      std::to_string(j);
        break;
      }
    }
  }

  std::sort(set.entries.begin(), set.entries.end(),
            [](const SolutionEntry& a, const SolutionEntry& b) {
              return a.total_J < b.total_J;
            });
  return set;
}

}  // namespace logvar
