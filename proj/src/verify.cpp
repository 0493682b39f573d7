#include "logvar/verify.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

#include "logvar/energy.hpp"
#include "logvar/flow.hpp"
#include "logvar/multisol.hpp"
#include "logvar/nehari.hpp"
#include "logvar/oracle.hpp"
#include "logvar/plaplace.hpp"
#include "logvar/random_fields.hpp"

namespace logvar {

namespace {

struct Check {
  bool pass = true;
  std::ostringstream detail;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "FAILED: " << what << "; ";
    }
  }
  void note(const std::string& s) { detail << s << "; "; }
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

double rel_diff(double a, double b) {
  const double den = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / den;
}

using clock_type = std::chrono::steady_clock;

CriterionResult finish(int id, const std::string& name, Check& c,
                       clock_type::time_point t0) {
  CriterionResult r;
  r.id = id;
  r.name = name;
  r.pass = c.pass;
  r.seconds =
      std::chrono::duration<double>(clock_type::now() - t0).count();
  r.detail = c.detail.str();
  return r;
}

CriterionResult criterion_gausson() {
  const auto t0 = clock_type::now();
  Check c;
  const Grid g = make_grid(1, 12.0, 961);
  PotentialSpec pot = bind(constant_potential(0.0), g);
  GroundOptions opts;
  opts.tol = 1e-8;
  const GroundResult res = ground_state(pot, default_init(g), opts);

  c.expect(res.report.converged && res.report.ps_epsilon <= 1e-6,
           "residual <= 1e-6 (got " + fmt(res.report.ps_epsilon) + ")");
  const Field ref = gausson(g, 0.0);
  const double rel_l2 =
      norm_l2(lin_comb(1.0, res.field, -1.0, ref)) / norm_l2(ref);
  c.expect(rel_l2 <= 1e-3, "rel L2 error vs Gausson <= 1e-3 (got " +
                               fmt(rel_l2) + ")");
  const double cinf = gausson_energy(1, 0.0);
  c.expect(rel_diff(res.energy.total_J, cinf) <= 1e-3,
           "J within 1e-3 relative of sqrt(pi)/2*e (got J=" +
               fmt(res.energy.total_J) + ", ref=" + fmt(cinf) + ")");
  const double secs =
      std::chrono::duration<double>(clock_type::now() - t0).count();
  c.expect(secs <= 5.0, "runtime <= 5 s (got " + fmt(secs) + ")");
  c.note("J=" + fmt(res.energy.total_J) + " relL2=" + fmt(rel_l2) +
         " residual=" + fmt(res.report.ps_epsilon));
  return finish(1, "Gausson reproduction (ground, V=0, N=1)", c, t0);
}

CriterionResult criterion_levels() {
  const auto t0 = clock_type::now();
  Check c;
  const Grid g = make_grid(1, 12.0, 961);
  PotentialSpec pot = bind(gaussian_well(0.5, 1.0, 0.0), g);
  const double margin = spectral_gate(pot);
  c.expect(margin > 0.0, "positivity check (lambda_1 = " + fmt(margin) + ")");

  const GroundResult res = ground_state(pot, default_init(g), {});
  const LevelsReport lev = compare_levels(res, pot);
  c.expect(lev.mountain_pass_gap > 0.0,
           "c_N < c_inf (gap = " + fmt(lev.mountain_pass_gap) + ")");
  c.expect(lev.mountain_pass_gap > 10.0 * lev.quadrature_floor,
           "gap exceeds 10x quadrature floor (gap=" +
               fmt(lev.mountain_pass_gap) + ", floor=" +
               fmt(lev.quadrature_floor) + ")");
  const double secs =
      std::chrono::duration<double>(clock_type::now() - t0).count();
  c.expect(secs <= 10.0, "runtime <= 10 s (got " + fmt(secs) + ")");
  c.note("c_N=" + fmt(lev.c_nehari) + " c_inf=" + fmt(lev.c_infinity) +
         " floor=" + fmt(lev.quadrature_floor));
  return finish(2, "Level ordering c_N < c_inf (gaussian well)", c, t0);
}

SolutionSet excited_harmonic(int n, int count) {
  const Grid g = make_grid(1, 12.0, n);
  PotentialSpec pot = bind(harmonic_potential(1.0), g);
  const FountainScaffold sc = build_scaffold(pot, g, count);
  MultisolOptions mo;
  mo.tol = 1e-6;
  return find_solutions(pot, sc, count, MultiStrategy::symmetry, mo);
}

CriterionResult criterion_multiplicity() {
  const auto t0 = clock_type::now();
  Check c;
  const SolutionSet base = excited_harmonic(1921, 3);
  c.expect(base.complete && base.entries.size() == 3,
           "three solutions found (" + base.warning + ")");
  if (base.entries.size() == 3) {
    c.expect(base.entries[0].total_J < base.entries[1].total_J &&
                 base.entries[1].total_J < base.entries[2].total_J,
             "strictly increasing J");
    for (int i = 0; i < 3; ++i) {
      c.expect(base.entries[i].nodal_count == i,
               "nodal count " + std::to_string(i) + " (got " +
                   std::to_string(base.entries[i].nodal_count) + ")");
      c.expect(base.entries[i].residual_norm <= 1e-6,
               "residual <= 1e-6 (got " + fmt(base.entries[i].residual_norm) +
                   ")");
    }
    const SolutionSet fine = excited_harmonic(2 * 1921 - 1, 3);
    c.expect(fine.complete && fine.entries.size() == 3,
             "refined run complete");
    if (fine.entries.size() == 3) {
      for (int i = 0; i < 3; ++i) {
        const double rd =
            rel_diff(base.entries[i].total_J, fine.entries[i].total_J);
        c.expect(rd <= 1e-3, "energy " + std::to_string(i) +
                                 " stable under refinement (rel diff " +
                                 fmt(rd) + ")");
      }
    }
    c.note("J = {" + fmt(base.entries[0].total_J) + ", " +
           fmt(base.entries[1].total_J) + ", " + fmt(base.entries[2].total_J) +
           "}");
  }
  const double secs =
      std::chrono::duration<double>(clock_type::now() - t0).count();
  c.expect(secs <= 60.0, "runtime <= 60 s (got " + fmt(secs) + ")");
  return finish(3, "Multiplicity trend (harmonic, count=3)", c, t0);
}

CriterionResult criterion_log_sobolev() {
  const auto t0 = clock_type::now();
  Check c;
  {
    const Grid g = make_grid(1, 12.0, 9601);
    std::mt19937_64 rng(42);
    std::vector<double> avals(50);
    for (int i = 0; i < 50; ++i)
      avals[i] = std::pow(10.0, -2.0 + 4.0 * i / 49.0);
    int violations = 0;
    double worst = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < 1000; ++trial) {
      const Field u = random_bump_field(g, rng);
      if (inner(u, u) < 1e-12) continue;
      for (const double a : avals) {
        const LogSobolevQuery q = log_sobolev(u, a);
        const double scale = std::max({1.0, std::abs(q.lhs), std::abs(q.rhs)});
        worst = std::min(worst, q.slack / scale);
        if (q.slack < -1e-10 * scale) ++violations;
      }
    }
    c.expect(violations == 0, "zero violations beyond -1e-10*scale (got " +
                                  std::to_string(violations) + ")");
    c.note("min slack/scale = " + fmt(worst));
  }
  {
    const Grid g = make_grid(1, 12.0, 19201);
    const Field u = sample_field(g, [](const std::array<double, 3>& x) {
      return 1.3 * std::exp(-0.5 * x[0] * x[0]);
    });
    const double astar = optimal_a(u);
    const LogSobolevQuery q = log_sobolev(u, astar);
    c.expect(std::abs(q.slack) <= 1e-6,
             "Gaussian equality at a* within 1e-6 (slack = " + fmt(q.slack) +
                 ")");
    c.note("a* = " + fmt(astar) + " (sqrt(pi) = " + fmt(std::sqrt(M_PI)) + ")");
  }
  const double secs =
      std::chrono::duration<double>(clock_type::now() - t0).count();
  c.expect(secs <= 30.0, "runtime <= 30 s (got " + fmt(secs) + ")");
  return finish(4, "Log-Sobolev suite (1000 fields x 50 a)", c, t0);
}

CriterionResult criterion_split() {
  const auto t0 = clock_type::now();
  Check c;
  const EnergySplitParams prm;  // delta = e^{-2}
  const double d = prm.delta;

  // C1 matching at +-delta from the closed-form branches
  const double in_val = -0.5 * d * d * std::log(d * d);
  const double out_val =
      -0.5 * d * d * (std::log(d * d) + 3.0) + 2.0 * d * d - 0.5 * d * d;
  c.expect(std::abs(in_val - out_val) <= 1e-14 * std::max(1.0, std::abs(in_val)),
           "branch values agree at delta");
  const double in_der = -d * std::log(d * d) - d;
  const double out_der = -d * (std::log(d * d) + 3.0) + 2.0 * d;
  c.expect(std::abs(in_der - out_der) <= 1e-14 * std::max(1.0, std::abs(in_der)),
           "branch derivatives agree at delta");
  c.expect(std::abs(f1(d, prm) - in_val) <= 1e-15 &&
               std::abs(f1(-d, prm) - in_val) <= 1e-15,
           "f1 evaluates the matched value at +-delta");

  // convexity sampling (f1'' >= 1 for delta = e^{-2}, so the finite
  // difference stays far above the -1e-12 floor)
  const double h = 1e-4;
  bool convex = true;
  for (int i = 0; i < 10000; ++i) {
    const double s = -10.0 + 20.0 * i / 9999.0;
    const double dd = (f1(s + h, prm) - 2.0 * f1(s, prm) + f1(s - h, prm)) /
                      (h * h);
    if (dd < -1e-12) convex = false;
  }
  c.expect(convex, "finite-difference f1'' >= -1e-12 on [-10,10]");

  bool f2zero = true;
  for (int i = 0; i < 1000; ++i) {
    const double s = -d * 0.999 + 2.0 * d * 0.999 * i / 999.0;
    if (f2(s, prm) != 0.0 || f2_prime(s, prm) != 0.0) f2zero = false;
  }
  c.expect(f2zero, "F2 identically zero on |s| < delta");

  // Phi + Psi reconciliation on 100 random fields
  const Grid g = make_grid(1, 12.0, 961);
  PotentialSpec pot = bind(gaussian_well(0.5, 1.0, 0.0), g);
  std::mt19937_64 rng(1234);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Field u = random_bump_field(g, rng);
    const EnergyBreakdown b = evaluate(u, pot, prm);
    worst = std::max(worst, rel_diff(b.phi + b.psi, b.total_J));
  }
  c.expect(worst <= 1e-12,
           "phi + psi == total_J to 1e-12 relative (worst " + fmt(worst) + ")");
  return finish(5, "F1/F2 split and reconciliation", c, t0);
}

CriterionResult criterion_gradient() {
  const auto t0 = clock_type::now();
  Check c;
  const Grid g = make_grid(1, 12.0, 961);
  PotentialSpec pot = bind(gaussian_well(0.5, 1.0, 0.0), g);
  std::mt19937_64 rng(77);
  const double eps = 1e-5;

  double worst2 = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const Field u = random_bump_field(g, rng);
    Field v = random_bump_field(g, rng);
    v = scaled(v, 1.0 / std::max(norm_l2(v), 1e-12));
    const double fd = (total_energy(lin_comb(1.0, u, eps, v), pot) -
                       total_energy(lin_comb(1.0, u, -eps, v), pot)) /
                      (2.0 * eps);
    const double an = inner(residual(u, pot), v);
    worst2 = std::max(worst2, rel_diff(fd, an));
  }
  c.expect(worst2 <= 1e-6,
           "J gradient matches FD to 1e-6 (worst " + fmt(worst2) + ")");

  const PExponent pe{3.0, 4.0};
  double worstp = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const Field u = random_bump_field(g, rng);
    Field v = random_bump_field(g, rng);
    v = scaled(v, 1.0 / std::max(norm_l2(v), 1e-12));
    const double fd = (p_energy(lin_comb(1.0, u, eps, v), pot, pe) -
                       p_energy(lin_comb(1.0, u, -eps, v), pot, pe)) /
                      (2.0 * eps);
    const double an = inner(p_residual(u, pot, pe), v);
    worstp = std::max(worstp, rel_diff(fd, an));
  }
  c.expect(worstp <= 1e-5,
           "p=3 gradient matches FD to 1e-5 (worst " + fmt(worstp) + ")");
  return finish(6, "Gradient correctness (J and p-functional)", c, t0);
}

CriterionResult criterion_nehari() {
  const auto t0 = clock_type::now();
  Check c;
  const Grid g = make_grid(1, 12.0, 961);
  PotentialSpec pot = bind(gaussian_well(0.5, 1.0, 0.0), g);
  spectral_gate(pot);
  std::mt19937_64 rng(99);

  // bisection oracle on phi'_u(s) = [Q(su) - int (su)^2 (log (su)^2 + 1)]/s
  auto phi_prime_sign = [&](const Field& u, double logs) {
    const Field su = scaled(u, std::exp(logs));
    double slog = 0.0;
    for (std::size_t i = 0; i < su.values.size(); ++i) {
      const double t = su.values[i] * su.values[i];
      slog += su.grid.quad_weight(i) * (t > 0.0 ? t * std::log(t) : 0.0);
    }
    return q_form(su, pot) - slog - inner(su, su);
  };

  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    Field u = random_bump_field(g, rng);
    if (inner(u, u) < 1e-10) continue;
    const NehariProjection pr = project(u, pot);
    double lo = std::log(1e-6), hi = std::log(1e6);
    if (phi_prime_sign(u, lo) < 0.0 || phi_prime_sign(u, hi) > 0.0) {
      c.expect(false, "bisection bracket failed");
      break;
    }
    for (int it = 0; it < 100; ++it) {
      const double mid = 0.5 * (lo + hi);
      (phi_prime_sign(u, mid) > 0.0 ? lo : hi) = mid;
    }
    const double s_bis = std::exp(0.5 * (lo + hi));
    worst = std::max(worst, rel_diff(s_bis, pr.scale));

    const NehariProjection twice = project(pr.projected, pot);
    c.expect(std::abs(twice.scale - 1.0) <= 1e-12,
             "projection idempotent (|s-1| = " + fmt(twice.scale - 1.0) + ")");
  }
  c.expect(worst <= 1e-10,
           "closed form vs bisection <= 1e-10 (worst " + fmt(worst) + ")");

  PotentialSpec flat = bind(constant_potential(0.0), g);
  spectral_gate(flat);
  const double s_gausson = project(gausson(g, 0.0), flat).scale;
  c.expect(std::abs(s_gausson - 1.0) <= 1e-3,
           "Gausson scale 1 +- 1e-3 (got " + fmt(s_gausson) + ")");
  return finish(7, "Nehari closed form vs bisection", c, t0);
}

CriterionResult criterion_fountain() {
  const auto t0 = clock_type::now();
  Check c;
  const Grid g = make_grid(1, 12.0, 961);
  PotentialSpec pot = bind(harmonic_potential(1.0), g);
  const FountainScaffold s = build_scaffold(pot, g, 8);
  for (int k = 1; k <= 8; ++k) {
    c.expect(rel_diff(s.eigenvalues[k - 1], 2.0 * k) <= 1e-3,
             "lambda_" + std::to_string(k) + " within 1e-3 of " +
                 std::to_string(2 * k) + " (got " + fmt(s.eigenvalues[k - 1]) +
                 ")");
    if (k >= 2) {
      c.expect(s.beta[k - 1] < s.beta[k - 2], "beta strictly decreasing");
      c.expect(s.b_estimates[k - 1] >= s.b_estimates[k - 2],
               "b_k estimates nondecreasing");
    }
  }
  c.note("beta_1 = " + fmt(s.beta[0]) + " b_8 = " + fmt(s.b_estimates[7]));
  return finish(8, "Fountain scaffold (harmonic, k = 1..8)", c, t0);
}

CriterionResult criterion_descent() {
  const auto t0 = clock_type::now();
  Check c;
  const Grid g = make_grid(1, 12.0, 961);

  struct Case {
    std::string name;
    PotentialSpec pot;
    Field u0;
  };
  std::vector<Case> cases;
  {
    PotentialSpec flat = bind(constant_potential(0.0), g);
    const Field G = gausson(g, 0.0);
    cases.push_back({"V=0 bump", flat, default_init(g)});
    cases.push_back({"V=0 1.5G", flat, scaled(G, 1.5)});
    cases.push_back({"V=0 5G", flat, scaled(G, 5.0)});
    PotentialSpec well = bind(gaussian_well(0.5, 1.0, 0.0), g);
    cases.push_back({"well bump", well, default_init(g)});
    PotentialSpec harm = bind(harmonic_potential(1.0), g);
    cases.push_back({"harmonic bump", harm, default_init(g)});
  }

  for (auto& cs : cases) {
    spectral_gate(cs.pot);
    DescendOptions opts;
    opts.tol = 1e-8;
    const DescendResult plus = descend(cs.u0, cs.pot, opts);
    const DescendResult minus = descend(scaled(cs.u0, -1.0), cs.pot, opts);

    c.expect(plus.report.converged, cs.name + ": converged");
    const auto& eh = plus.report.energy_history;
    bool monotone = true;
    for (std::size_t i = 1; i < eh.size(); ++i)
      if (eh[i] > eh[i - 1] + 1e-12 * std::max(1.0, std::abs(eh[i - 1])))
        monotone = false;
    c.expect(monotone, cs.name + ": energy monotone on accepted steps");

    c.expect(plus.report.iterations == minus.report.iterations,
             cs.name + ": odd trajectories, same step count");
    double odd = 0.0;
    for (std::size_t i = 0; i < plus.field.values.size(); ++i)
      odd = std::max(odd, std::abs(plus.field.values[i] +
                                   minus.field.values[i]));
    c.expect(odd <= 1e-12, cs.name + ": descend(-u0) = -descend(u0) (worst " +
                               fmt(odd) + ")");

    const PsSummary ps = ps_diagnostic(plus.report, cs.pot);
    c.expect(ps.within, cs.name + ": PS norm cap holds (cap " +
                            fmt(ps.norm_cap) + " observed " +
                            fmt(ps.observed_max_norm) + ")");
  }
  return finish(9, "Descent contracts (monotone, odd, PS cap)", c, t0);
}

CriterionResult criterion_p2() {
  const auto t0 = clock_type::now();
  Check c;
  const Grid g = make_grid(1, 12.0, 961);
  PotentialSpec pot = bind(gaussian_well(0.5, 1.0, 0.0), g);
  spectral_gate(pot);
  const PExponent pe{2.0, 3.0};
  std::mt19937_64 rng(2024);
  double we = 0.0, wr = 0.0, ws = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const Field u = random_bump_field(g, rng);
    if (inner(u, u) < 1e-10) continue;
    we = std::max(we, rel_diff(p_energy(u, pot, pe), total_energy(u, pot)));
    const Field r2 = residual(u, pot);
    const Field rp = p_residual(u, pot, pe);
    wr = std::max(wr, norm_l2(lin_comb(1.0, rp, -1.0, r2)) /
                          std::max(1.0, norm_l2(r2)));
    ws = std::max(ws, rel_diff(p_nehari_scale(u, pot, pe),
                               project(u, pot).scale));
  }
  c.expect(we <= 1e-10, "p_energy matches J at p=2 (worst " + fmt(we) + ")");
  c.expect(wr <= 1e-10, "p_residual matches residual at p=2 (worst " +
                            fmt(wr) + ")");
  c.expect(ws <= 1e-10, "p_nehari_scale matches project at p=2 (worst " +
                            fmt(ws) + ")");
  return finish(10, "p -> 2 consistency", c, t0);
}

}  // namespace

std::vector<CriterionResult> run_acceptance() {
  std::vector<CriterionResult> out;
  out.push_back(criterion_gausson());
  out.push_back(criterion_levels());
  out.push_back(criterion_multiplicity());
  out.push_back(criterion_log_sobolev());
  out.push_back(criterion_split());
  out.push_back(criterion_gradient());
  out.push_back(criterion_nehari());
  out.push_back(criterion_fountain());
  out.push_back(criterion_descent());
  out.push_back(criterion_p2());
  return out;
}

}  // namespace logvar
