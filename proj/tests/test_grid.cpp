#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "logvar/grid.hpp"
#include "logvar/oracle.hpp"
#include "logvar/random_fields.hpp"

using namespace logvar;

namespace {

Field field_from(const Grid& g, std::initializer_list<double> vals) {
  Field u;
  u.grid = g;
  u.values = vals;
  return u;
}

}  // namespace

TEST_CASE("grid construction and validation") {
  const Grid g = make_grid(1, 12.0, 961);
  CHECK(g.spacing() == doctest::Approx(0.025));
  CHECK(g.node_count() == 961);
  CHECK_THROWS_AS(make_grid(4, 1.0, 9), GridError);
  CHECK_THROWS_AS(make_grid(1, -1.0, 9), GridError);
  CHECK_THROWS_AS(make_grid(1, 1.0, 2), GridError);

  // node coordinates are exactly symmetric
  const Grid g3 = make_grid(2, 8.0, 33);
  for (std::size_t i = 0; i < g3.node_count(); ++i) {
    const auto x = g3.coords(i);
    const auto xm = g3.coords(g3.mirror(i));
    CHECK(x[0] == -xm[0]);
    CHECK(x[1] == -xm[1]);
  }
}

TEST_CASE("integrate: zero, box measure, gaussian") {
  const Grid g0 = make_grid(1, 1.0, 9);
  CHECK(integrate(zero_field(g0)) == 0.0);

  const Grid g = make_grid(1, 1.0, 3);
  // constant 1 has boundary samples too; build by hand
  CHECK(integrate(field_from(g, {1.0, 1.0, 1.0})) == doctest::Approx(2.0));

  const Grid gf = make_grid(1, 12.0, 961);
  const Field e = sample_field(gf, [](const std::array<double, 3>& x) {
    return std::exp(-x[0] * x[0]);
  });
  CHECK(integrate(e) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-8));

  Field bad = zero_field(g);
  bad.values[1] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_WITH_AS(integrate(bad), "non-finite integrand", GridError);
}

TEST_CASE("integrate is linear and monotone") {
  const Grid g = make_grid(1, 5.0, 101);
  std::mt19937_64 rng(1);
  const Field a = random_bump_field(g, rng);
  const Field b = random_bump_field(g, rng);
  CHECK(integrate(lin_comb(2.0, a, -3.0, b)) ==
        doctest::Approx(2.0 * integrate(a) - 3.0 * integrate(b)));

  Field absb = b;
  for (double& v : absb.values) v = std::abs(v);
  Field bigger = lin_comb(1.0, a, 1.0, absb);
  CHECK(integrate(bigger) >= integrate(a) - 1e-12);
}

TEST_CASE("grad_norm_sq: hand value and Gausson") {
  const Grid g = make_grid(1, 1.0, 3);
  CHECK(grad_norm_sq(zero_field(g)) == 0.0);
  CHECK(grad_norm_sq(field_from(g, {0.0, 1.0, 0.0})) == doctest::Approx(2.0));

  const Grid gf = make_grid(1, 12.0, 961);
  const Field G = gausson(gf, 0.0);
  const double exact = 0.5 * std::sqrt(M_PI) * std::exp(1.0);
  CHECK(grad_norm_sq(G) == doctest::Approx(exact).epsilon(1e-4));
}

TEST_CASE("grad_norm_sq converges at order h^2 on the Gausson") {
  const double exact = 0.5 * std::sqrt(M_PI) * std::exp(1.0);
  double err[3];
  int n = 241;
  for (int k = 0; k < 3; ++k) {
    const Grid g = make_grid(1, 12.0, n);
    err[k] = std::abs(grad_norm_sq(gausson(g, 0.0)) - exact);
    n = 2 * n - 1;
  }
  CHECK(err[0] / err[1] == doctest::Approx(4.0).epsilon(0.15));
  CHECK(err[1] / err[2] == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("grad_norm_sq vanishes only at zero") {
  const Grid g = make_grid(1, 2.0, 17);
  Field u = zero_field(g);
  u.values[5] = 1e-9;
  CHECK(grad_norm_sq(u) > 0.0);
}

TEST_CASE("apply_operator: stencil value, symmetry, positivity") {
  const Grid g = make_grid(1, 1.0, 3);
  std::vector<double> w0(3, 0.0);
  CHECK(apply_operator(zero_field(g), w0).values == zero_field(g).values);
  const Field mid = field_from(g, {0.0, 1.0, 0.0});
  CHECK(apply_operator(mid, w0).values[1] == doctest::Approx(2.0));

  const Grid gf = make_grid(1, 6.0, 121);
  std::vector<double> w(gf.node_count());
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(0.0, 2.0);
  for (double& x : w) x = unif(rng);
  const Field u = random_bump_field(gf, rng);
  const Field v = random_bump_field(gf, rng);
  const double uAv = inner(u, apply_operator(v, w));
  const double vAu = inner(v, apply_operator(u, w));
  const double scale = std::max({1.0, std::abs(uAv), std::abs(vAu)});
  CHECK(std::abs(uAv - vAu) <= 1e-12 * scale);
  CHECK(inner(u, apply_operator(u, w)) > 0.0);

  Field wrong = zero_field(make_grid(1, 6.0, 61));
  CHECK_THROWS_AS(apply_operator(u, std::vector<double>(3, 0.0)), GridError);
  (void)wrong;
}

TEST_CASE("boundary mass and nodal count") {
  const Grid g = make_grid(1, 12.0, 241);
  const Field G = gausson(g, 0.0);
  CHECK(boundary_mass_fraction(G) < 1e-30);
  CHECK(nodal_count(G) == 0);

  const Field s = sample_field(g, [](const std::array<double, 3>& x) {
    return x[0] * std::exp(-x[0] * x[0]);
  });
  CHECK(nodal_count(s) == 1);
  const Field s2 = sample_field(g, [](const std::array<double, 3>& x) {
    return (x[0] * x[0] - 1.0) * std::exp(-x[0] * x[0]);
  });
  CHECK(nodal_count(s2) == 2);
  CHECK(nodal_count(zero_field(g)) == 0);
}

TEST_CASE("parity symmetrization is exact on the node set") {
  const Grid g = make_grid(1, 3.0, 33);
  std::mt19937_64 rng(3);
  const Field u = random_bump_field(g, rng);
  const Field even = symmetrized(u, 0);
  const Field odd = symmetrized(u, 1);
  CHECK(parity_defect(even, 0) == 0.0);
  CHECK(parity_defect(odd, 1) == 0.0);
  for (std::size_t i = 0; i < u.values.size(); ++i)
    CHECK(even.values[i] + odd.values[i] == doctest::Approx(u.values[i]));
}

TEST_CASE("interp_refine reproduces linear data exactly") {
  const Grid g = make_grid(2, 4.0, 9);
  const Field u = sample_field(g, [](const std::array<double, 3>& x) {
    return 2.0 * x[0] - 0.5 * x[1];
  });
  const Field f = interp_refine(u);
  const Grid gf = make_grid(2, 4.0, 17);
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    // stay clear of the coarse boundary ring, which sample_field zeroes
    bool inside = true;
    for (int a = 0; a < 2; ++a) {
      const int k = gf.axis_index(i, a);
      if (k < 2 || k > gf.points_per_axis - 3) inside = false;
    }
    if (!inside) continue;
    const auto x = gf.coords(i);
    CHECK(f.values[i] == doctest::Approx(2.0 * x[0] - 0.5 * x[1]).epsilon(1e-12));
  }
}

TEST_CASE("field dump round trip and header format") {
  const Grid g = make_grid(1, 1.5, 9);
  std::mt19937_64 rng(11);
  const Field u = random_bump_field(g, rng);
  std::ostringstream os;
  write_field(os, u);
  const std::string text = os.str();
  CHECK(text.rfind("LOGVAR-FIELD v1 dim=1 n=9 L=1.5\n", 0) == 0);

  std::istringstream is(text);
  const Field back = read_field(is);
  CHECK(back.grid == g);
  for (std::size_t i = 0; i < u.values.size(); ++i)
    CHECK(back.values[i] == u.values[i]);  // bit-exact round trip
}
