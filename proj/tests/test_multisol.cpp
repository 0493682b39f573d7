#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "logvar/energy.hpp"
#include "logvar/multisol.hpp"
#include "logvar/nehari.hpp"

using namespace logvar;

TEST_CASE("fountain scaffold on the harmonic oscillator") {
  const Grid g = make_grid(1, 12.0, 961);
  const PotentialSpec pot = bind(harmonic_potential(1.0), g);
  const FountainScaffold s = build_scaffold(pot, g, 8);

  CHECK(s.beta[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(5e-3));
  for (int k = 2; k <= 8; ++k) {
    CHECK(s.beta[k - 1] < s.beta[k - 2]);
    CHECK(s.r[k - 1] == doctest::Approx(1.0 / s.beta[k - 1]).epsilon(1e-14));
    CHECK(s.rho[k - 1] > s.r[k - 1]);
    CHECK(s.b_estimates[k - 1] >= s.b_estimates[k - 2]);
  }

  const PotentialSpec flat = bind(constant_potential(0.0), g);
  CHECK_THROWS_AS(build_scaffold(flat, g, 3), std::invalid_argument);
}

TEST_CASE("symmetry strategy: three nodal solutions with increasing energy") {
  const Grid g = make_grid(1, 12.0, 961);
  const PotentialSpec pot = bind(harmonic_potential(1.0), g);
  const FountainScaffold sc = build_scaffold(pot, g, 3);
  MultisolOptions mo;
  mo.tol = 1e-6;
  const SolutionSet set =
      find_solutions(pot, sc, 3, MultiStrategy::symmetry, mo);

  REQUIRE(set.complete);
  REQUIRE(set.entries.size() == 3);
  for (int i = 0; i < 3; ++i) {
    const SolutionEntry& e = set.entries[i];
    CHECK(e.nodal_count == i);
    CHECK(e.residual_norm <= 1e-6);
    CHECK(e.total_J >= sc.b_estimates[i] - 1e-9);
    // parity purity
    const double defect = parity_defect(e.field, i % 2);
    double umax = 0.0;
    for (double v : e.field.values) umax = std::max(umax, std::abs(v));
    CHECK(defect <= 1e-10 * umax);
    // J is even in u
    CHECK(total_energy(scaled(e.field, -1.0), pot) ==
          doctest::Approx(e.total_J).epsilon(1e-14));
    if (i > 0) CHECK(e.total_J > set.entries[i - 1].total_J);
  }

  // the nodal-0 entry matches the closed-form Gaussian profile
  // u = e^a exp(-a x^2), a = (1 + sqrt 5)/4
  const double a = 0.25 * (1.0 + std::sqrt(5.0));
  const Field ref = sample_field(g, [&](const std::array<double, 3>& x) {
    return std::exp(a) * std::exp(-a * x[0] * x[0]);
  });
  const double rel =
      norm_l2(lin_comb(1.0, set.entries[0].field, -1.0, ref)) / norm_l2(ref);
  CHECK(rel <= 1e-3);
  const double Jref = 0.5 * std::exp(2.0 * a) * std::sqrt(M_PI / (2.0 * a));
  CHECK(set.entries[0].total_J == doctest::Approx(Jref).epsilon(1e-3));
}

TEST_CASE("pairwise distinctness of returned solutions") {
  const Grid g = make_grid(1, 12.0, 481);
  const PotentialSpec pot = bind(harmonic_potential(1.0), g);
  const FountainScaffold sc = build_scaffold(pot, g, 3);
  const SolutionSet set =
      find_solutions(pot, sc, 3, MultiStrategy::symmetry, {});
  REQUIRE(set.entries.size() == 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j) {
      const double thr = 1e-3 * std::max(norm_l2(set.entries[i].field),
                                         norm_l2(set.entries[j].field));
      CHECK(norm_l2(lin_comb(1.0, set.entries[i].field, -1.0,
                             set.entries[j].field)) >= thr);
      CHECK(norm_l2(lin_comb(1.0, set.entries[i].field, 1.0,
                             set.entries[j].field)) >= thr);
    }
}

TEST_CASE("deflation strategy finds distinct critical points") {
  const Grid g = make_grid(1, 12.0, 481);
  const PotentialSpec pot = bind(harmonic_potential(1.0), g);
  const FountainScaffold sc = build_scaffold(pot, g, 4);
  MultisolOptions mo;
  mo.tol = 1e-6;
  const SolutionSet set =
      find_solutions(pot, sc, 2, MultiStrategy::deflation, mo);
  REQUIRE(set.complete);
  REQUIRE(set.entries.size() == 2);
  for (const auto& e : set.entries) CHECK(e.residual_norm <= 1e-6);
  const double thr = 1e-3 * std::max(norm_l2(set.entries[0].field),
                                     norm_l2(set.entries[1].field));
  CHECK(norm_l2(lin_comb(1.0, set.entries[0].field, -1.0,
                         set.entries[1].field)) >= thr);
}

TEST_CASE("find_solutions argument validation") {
  const Grid g = make_grid(1, 12.0, 241);
  const PotentialSpec pot = bind(harmonic_potential(1.0), g);
  const FountainScaffold sc = build_scaffold(pot, g, 2);
  CHECK_THROWS_AS(find_solutions(pot, sc, 3, MultiStrategy::symmetry, {}),
                  std::invalid_argument);
  CHECK_THROWS_AS(find_solutions(pot, sc, 0, MultiStrategy::symmetry, {}),
                  std::invalid_argument);
}
