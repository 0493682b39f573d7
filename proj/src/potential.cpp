#include "logvar/potential.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "logvar/linalg.hpp"

namespace logvar {

std::string to_string(PotentialKind k) {
  switch (k) {
    case PotentialKind::constant: return "constant";
    case PotentialKind::gaussian_well: return "gaussian_well";
    case PotentialKind::harmonic: return "harmonic";
    case PotentialKind::table: return "table";
  }
  return "?";
}

PotentialSpec constant_potential(double value) {
  PotentialSpec p;
  p.kind = PotentialKind::constant;
  p.v_infinity = value;
  return p;
}

PotentialSpec gaussian_well(double depth, double sigma, double v_infinity) {
  if (!(depth >= 0.0) || !(sigma > 0.0))
    throw std::invalid_argument("gaussian_well: depth >= 0 and sigma > 0 required");
  PotentialSpec p;
  p.kind = PotentialKind::gaussian_well;
  p.v_infinity = v_infinity;
  p.depth = depth;
  p.sigma = sigma;
  return p;
}

PotentialSpec harmonic_potential(double coefficient) {
  if (!(coefficient > 0.0))
    throw std::invalid_argument("harmonic_potential: coefficient > 0 required");
  PotentialSpec p;
  p.kind = PotentialKind::harmonic;
  p.v_infinity = std::numeric_limits<double>::infinity();
  p.coefficient = coefficient;
  return p;
}

PotentialSpec table_potential(std::vector<double> samples, double v_infinity) {
  PotentialSpec p;
  p.kind = PotentialKind::table;
  p.v_infinity = v_infinity;
  p.table = std::move(samples);
  return p;
}

double potential_value(const PotentialSpec& p, const std::array<double, 3>& x,
                       int dim) {
  double r2 = 0.0;
  for (int a = 0; a < dim; ++a) r2 += x[a] * x[a];
  switch (p.kind) {
    case PotentialKind::constant:
      return p.v_infinity;
    case PotentialKind::gaussian_well:
      return p.v_infinity - p.depth * std::exp(-r2 / (p.sigma * p.sigma));
    case PotentialKind::harmonic:
      return p.coefficient * r2;
    case PotentialKind::table:
      throw std::invalid_argument("table potential has no closed form");
  }
  return 0.0;
}

PotentialSpec bind(const PotentialSpec& p, const Grid& g) {
  PotentialSpec out = p;
  const std::size_t n = g.node_count();
  out.samples.resize(n);
  if (p.kind == PotentialKind::table) {
    if (p.table.size() != n)
      throw std::invalid_argument("table potential has wrong length for grid");
    out.samples = p.table;
  } else {
    for (std::size_t i = 0; i < n; ++i)
      out.samples[i] = potential_value(p, g.coords(i), g.dim);
  }
  out.vp1_plus.resize(n);
  out.vp1_minus.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double w = out.samples[i] + 1.0;
    out.vp1_plus[i] = std::max(w, 0.0);
    out.vp1_minus[i] = std::max(-w, 0.0);
  }
  out.bound = true;
  out.grid = g;
  out.lambda1.reset();
  return out;
}

namespace {

constexpr long kEigenIterCap = 10000;
constexpr double kEigenTolRel = 1e-8;

// Quadrature inner product restricted to values vectors of one grid.
double qip(const Grid& g, const std::vector<double>& a,
           const std::vector<double>& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    acc += g.quad_weight(i) * a[i] * b[i];
  return acc;
}

void stencil_apply(const Grid& g, const std::vector<double>& weight,
                   const std::vector<double>& u, std::vector<double>& out) {
  const int n = g.points_per_axis;
  const double inv_h2 = 1.0 / (g.spacing() * g.spacing());
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (g.is_boundary(i)) {
      out[i] = 0.0;
      continue;
    }
    double acc = weight[i] * u[i];
    for (int a = 0; a < g.dim; ++a) {
      const std::size_t s = g.stride(a);
      acc += (2.0 * u[i] - u[i - s] - u[i + s]) * inv_h2;
    }
    out[i] = acc;
  }
  (void)n;
}

}  // namespace

SpectrumInfo lowest_eigenpairs_weighted(const Grid& g,
                                        const std::vector<double>& weight,
                                        int k) {
  if (k < 1) throw std::invalid_argument("lowest_eigenpairs: k >= 1 required");
  const std::size_t n = g.node_count();
  if (static_cast<std::size_t>(k) * 4 > n)
    throw std::invalid_argument("lowest_eigenpairs: k too large for grid");

  const double wmin = *std::min_element(weight.begin(), weight.end());
  const double wmax = *std::max_element(weight.begin(), weight.end());
  const double lam_max_bound =
      4.0 * g.dim / (g.spacing() * g.spacing()) + wmax;
  const double mu = lam_max_bound + std::abs(wmin) + 2.0;

  std::vector<std::vector<double>> phis;
  std::vector<double> lams;

  std::mt19937_64 rng(0x5eed5eedULL);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);

  std::vector<double> v(n), y(n), ay(n), rhs(n);
  for (int j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < n; ++i)
      v[i] = g.is_boundary(i) ? 0.0 : unif(rng);
    for (const auto& phi : phis) {
      const double c = qip(g, phi, v);
      for (std::size_t i = 0; i < n; ++i) v[i] -= c * phi[i];
    }
    double nv = std::sqrt(qip(g, v, v));
    for (std::size_t i = 0; i < n; ++i) v[i] /= nv;

    double sigma = wmin - 1.0;
    double rho = 0.0, res = std::numeric_limits<double>::infinity();
    bool converged = false;
    for (long it = 0; it < kEigenIterCap; ++it) {
      const double sig = sigma;
      auto op = [&](const std::vector<double>& in, std::vector<double>& out) {
        stencil_apply(g, weight, in, out);
        for (std::size_t i = 0; i < in.size(); ++i) out[i] -= sig * in[i];
        for (const auto& phi : phis) {
          const double c = mu * qip(g, phi, in);
          for (std::size_t i = 0; i < in.size(); ++i) out[i] += c * phi[i];
        }
        for (std::size_t i = 0; i < in.size(); ++i)
          if (g.is_boundary(i)) out[i] = 0.0;
      };
      rhs = v;
      cg_solve(op, rhs, y, 1e-12);
      for (const auto& phi : phis) {
        const double c = qip(g, phi, y);
        for (std::size_t i = 0; i < n; ++i) y[i] -= c * phi[i];
      }
      const double ny = std::sqrt(qip(g, y, y));
      for (std::size_t i = 0; i < n; ++i) y[i] /= ny;
      stencil_apply(g, weight, y, ay);
      rho = qip(g, y, ay);
      double r2 = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double d = ay[i] - rho * y[i];
        r2 += g.quad_weight(i) * d * d;
      }
      res = std::sqrt(r2);
      v = y;
      if (res <= kEigenTolRel * std::max(std::abs(rho), 1e-8)) {
        converged = true;
        break;
      }
      sigma = rho - std::max(10.0 * res, 1e-2 * (1.0 + std::abs(rho)));
    }
    if (!converged)
      throw EigensolveError("eigensolve: pair " + std::to_string(j) +
                                " did not converge",
                            res);
    phis.push_back(v);
    lams.push_back(rho);
  }

  // sort ascending and package
  std::vector<int> order(k);
  for (int i = 0; i < k; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return lams[a] < lams[b]; });

  SpectrumInfo s;
  s.k = k;
  for (int idx : order) {
    s.eigenvalues.push_back(lams[idx]);
    Field f;
    f.grid = g;
    f.values = phis[idx];
    stencil_apply(g, weight, f.values, ay);
    double r2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = ay[i] - lams[idx] * f.values[i];
      r2 += g.quad_weight(i) * d * d;
    }
    s.residuals.push_back(std::sqrt(r2));
    s.eigenfields.push_back(std::move(f));
  }
  return s;
}

SpectrumInfo lowest_eigenpairs(const PotentialSpec& p, const Grid& g, int k) {
  if (!p.bound || !(p.grid == g))
    throw std::invalid_argument("lowest_eigenpairs: potential not bound to grid");
  std::vector<double> weight(p.samples.size());
  for (std::size_t i = 0; i < weight.size(); ++i) weight[i] = p.samples[i] + 1.0;
  return lowest_eigenpairs_weighted(g, weight, k);
}

PositivityResult positivity_check(const SpectrumInfo& s) {
  if (s.eigenvalues.empty())
    throw std::invalid_argument("positivity_check: empty spectrum");
  return PositivityResult{s.eigenvalues.front() > 0.0, s.eigenvalues.front()};
}

double spectral_gate(PotentialSpec& p) {
  if (p.coercive()) return std::numeric_limits<double>::infinity();
  if (!p.bound) throw std::invalid_argument("spectral_gate: potential not bound");
  if (!p.lambda1) {
    const SpectrumInfo s = lowest_eigenpairs(p, p.grid, 1);
    p.lambda1 = s.eigenvalues.front();
  }
  return *p.lambda1;
}

}  // namespace logvar
