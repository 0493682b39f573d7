#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "logvar/energy.hpp"
#include "logvar/oracle.hpp"
#include "logvar/random_fields.hpp"

using namespace logvar;

namespace {
const double kDelta = std::exp(-2.0);
}

TEST_CASE("F1 branch values and derivatives match at delta") {
  const EnergySplitParams prm;
  CHECK(prm.delta == doctest::Approx(kDelta).epsilon(1e-15));
  CHECK(f1(0.0, prm) == 0.0);
  // both closed forms at s = delta give -delta^2 log(delta^2)/2 = 2 e^{-4}
  CHECK(f1(kDelta, prm) == doctest::Approx(2.0 * std::exp(-4.0)).epsilon(1e-14));
  const double inner_branch = -0.5 * kDelta * kDelta * std::log(kDelta * kDelta);
  const double outer_branch = -0.5 * kDelta * kDelta *
                                  (std::log(kDelta * kDelta) + 3.0) +
                              2.0 * kDelta * kDelta - 0.5 * kDelta * kDelta;
  CHECK(std::abs(inner_branch - outer_branch) <= 1e-16);
  // derivative: -delta log delta^2 - delta = 3 e^{-2}
  const double d_inner = -kDelta * std::log(kDelta * kDelta) - kDelta;
  const double d_outer = -kDelta * (std::log(kDelta * kDelta) + 3.0) + 2.0 * kDelta;
  CHECK(d_inner == doctest::Approx(3.0 * std::exp(-2.0)).epsilon(1e-14));
  CHECK(std::abs(d_inner - d_outer) <= 1e-16);
  CHECK(f1_prime(kDelta * 0.999999, prm) ==
        doctest::Approx(d_inner).epsilon(1e-5));

  CHECK_THROWS(validate(EnergySplitParams{0.3, 3.0}));   // > e^{-3/2}
  CHECK_THROWS(validate(EnergySplitParams{-0.1, 3.0}));
}

TEST_CASE("F1 is even, nonnegative, convex; F1' odd") {
  const EnergySplitParams prm;
  for (double s : {0.0, 0.01, 0.1, kDelta, 0.5, 2.0, 10.0}) {
    CHECK(f1(s, prm) == f1(-s, prm));
    CHECK(f1(s, prm) >= 0.0);
    CHECK(f1_prime(s, prm) == -f1_prime(-s, prm));
  }
  const double h = 1e-4;
  for (int i = 0; i < 2000; ++i) {
    const double s = -10.0 + 20.0 * i / 1999.0;
    const double dd = (f1(s + h, prm) - 2 * f1(s, prm) + f1(s - h, prm)) / (h * h);
    CHECK(dd >= -1e-12);
  }
}

TEST_CASE("F2 vanishes below delta and matches the splitting identity") {
  const EnergySplitParams prm;
  CHECK(f2(kDelta / 2.0, prm) == 0.0);
  CHECK(f2(0.0, prm) == 0.0);
  CHECK(f2_prime(0.0, prm) == 0.0);
  const double s = 2.0;
  CHECK(f2(s, prm) - f1(s, prm) ==
        doctest::Approx(0.5 * s * s * std::log(s * s)).epsilon(1e-14));
}

TEST_CASE("evaluate: zero field, Gausson level, Nehari identity") {
  const Grid g = make_grid(1, 12.0, 961);
  const PotentialSpec pot = bind(constant_potential(0.0), g);
  const EnergyBreakdown z = evaluate(zero_field(g), pot);
  CHECK(z.total_J == 0.0);
  CHECK(z.phi == 0.0);
  CHECK(z.psi == 0.0);

  const Field G = gausson(g, 0.0);
  const EnergyBreakdown b = evaluate(G, pot);
  const double cinf = 0.5 * std::sqrt(M_PI) * std::exp(1.0);
  CHECK(b.total_J == doctest::Approx(cinf).epsilon(1e-3));
  // on the manifold J = |u|_2^2 / 2
  CHECK(b.total_J == doctest::Approx(0.5 * inner(G, G)).epsilon(1e-3));
  // discrete identity J - <J'(u),u>/2 = |u|_2^2/2 holds to round-off
  const double pairing = inner(residual(G, pot), G);
  CHECK(b.total_J - 0.5 * pairing ==
        doctest::Approx(0.5 * inner(G, G)).epsilon(1e-13));
}

TEST_CASE("split reconciliation and psi properties on random fields") {
  const Grid g = make_grid(1, 12.0, 481);
  const PotentialSpec pot = bind(gaussian_well(0.5, 1.0, 0.0), g);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 30; ++t) {
    const Field u = random_bump_field(g, rng);
    const EnergyBreakdown b = evaluate(u, pot);
    const double scale = std::max(1.0, std::abs(b.total_J));
    CHECK(std::abs(b.phi + b.psi - b.total_J) <= 1e-12 * scale);
    CHECK(b.psi >= 0.0);

    const Field v = random_bump_field(g, rng);
    const double psi_mid = evaluate(lin_comb(0.5, u, 0.5, v), pot).psi;
    const double psi_avg = 0.5 * b.psi + 0.5 * evaluate(v, pot).psi;
    CHECK(psi_mid <= psi_avg + 1e-10 * std::max(1.0, psi_avg));
  }
}

TEST_CASE("residual: zero field, Gausson discretization error, O(h^2)") {
  const Grid g = make_grid(1, 12.0, 961);
  const PotentialSpec pot = bind(constant_potential(0.0), g);
  CHECK(norm_l2(residual(zero_field(g), pot)) == 0.0);

  const double r961 = norm_l2(residual(gausson(g, 0.0), pot));
  CHECK(r961 <= 1e-3);
  const Grid gc = make_grid(1, 12.0, 481);
  const double r481 =
      norm_l2(residual(gausson(gc, 0.0), bind(constant_potential(0.0), gc)));
  CHECK(r481 / r961 == doctest::Approx(4.0).epsilon(0.2));
}

TEST_CASE("residual is the gradient of J (finite differences)") {
  const Grid g = make_grid(1, 12.0, 481);
  const PotentialSpec pot = bind(gaussian_well(0.5, 1.0, 0.0), g);
  std::mt19937_64 rng(17);
  const double eps = 1e-5;
  for (int t = 0; t < 5; ++t) {
    const Field u = random_bump_field(g, rng);
    Field v = random_bump_field(g, rng);
    v = scaled(v, 1.0 / norm_l2(v));
    const double fd = (total_energy(lin_comb(1.0, u, eps, v), pot) -
                       total_energy(lin_comb(1.0, u, -eps, v), pot)) /
                      (2 * eps);
    const double an = inner(residual(u, pot), v);
    CHECK(fd == doctest::Approx(an).epsilon(1e-6));
  }
}

TEST_CASE("log-Sobolev: Gaussian equality, suboptimal a, random suite") {
  const Grid g = make_grid(1, 12.0, 19201);
  const Field u = sample_field(g, [](const std::array<double, 3>& x) {
    return std::exp(-0.5 * x[0] * x[0]);
  });
  const LogSobolevQuery at_sqrt_pi = log_sobolev(u, std::sqrt(M_PI));
  CHECK(std::abs(at_sqrt_pi.slack) <= 1e-6);
  const LogSobolevQuery at_one = log_sobolev(u, 1.0);
  CHECK(at_one.slack > 1e-3);

  const Grid gr = make_grid(1, 12.0, 2401);
  std::mt19937_64 rng(23);
  const Field w = random_bump_field(gr, rng);
  for (int i = 0; i < 50; ++i) {
    const double a = std::pow(10.0, -2.0 + 4.0 * i / 49.0);
    const LogSobolevQuery q = log_sobolev(w, a);
    const double scale = std::max({1.0, std::abs(q.lhs), std::abs(q.rhs)});
    CHECK(q.slack >= -1e-10 * scale);
  }
  CHECK_THROWS_AS(log_sobolev(zero_field(gr), 1.0), EnergyError);
}

TEST_CASE("optimal_a: Gaussian value, scale invariance, minimizer property") {
  const Grid g = make_grid(1, 12.0, 19201);
  const Field u = sample_field(g, [](const std::array<double, 3>& x) {
    return std::exp(-0.5 * x[0] * x[0]);
  });
  const double astar = optimal_a(u);
  CHECK(astar == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-6));
  CHECK(optimal_a(scaled(u, 2.0)) == doctest::Approx(astar).epsilon(1e-14));

  const double base = log_sobolev(u, astar).rhs;
  for (int i = 0; i < 50; ++i) {
    const double a = std::pow(10.0, -1.0 + 2.0 * i / 49.0);
    CHECK(base <= log_sobolev(u, a).rhs + 1e-12);
  }
  CHECK_THROWS_AS(optimal_a(zero_field(g)), EnergyError);
}

TEST_CASE("coercivity bound certifies 2J from below") {
  const Grid g = make_grid(1, 12.0, 961);
  const PotentialSpec pot = bind(constant_potential(0.0), g);
  const Field G = gausson(g, 0.0);
  CHECK(coercivity_bound(G, pot) <= 2.0 * total_energy(G, pot) + 1e-8);

  const PotentialSpec well = bind(gaussian_well(0.5, 1.0, 0.0), g);
  std::mt19937_64 rng(31);
  for (int t = 0; t < 100; ++t) {
    const Field u = random_bump_field(g, rng);
    if (inner(u, u) < 1e-12) continue;
    const double lb = coercivity_bound(u, well);
    const double twoJ = 2.0 * total_energy(u, well);
    CHECK(lb <= twoJ + 1e-8 * std::max(1.0, std::abs(twoJ)));
  }

  // along a ray the bound tracks 2J, and the capped chain grows with s
  const Field u0 = gausson(g, 0.0);
  for (int s = 1; s <= 100; s += 9) {
    const Field su = scaled(u0, s);
    CHECK(coercivity_bound(su, pot) <=
          2.0 * total_energy(su, pot) + 1e-6 * (1.0 + s * s));
  }
}

TEST_CASE("evaluate names the offending term on non-finite input") {
  const Grid g = make_grid(1, 2.0, 17);
  const PotentialSpec pot = bind(constant_potential(0.0), g);
  Field u = zero_field(g);
  u.values[8] = 1e308;
  u.values[9] = 1e308;  // kinetic overflows to inf
  CHECK_THROWS_WITH_AS(evaluate(u, pot),
                       "non-finite energy term: kinetic", EnergyError);
}
