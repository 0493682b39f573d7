#include "logvar/grid.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "logvar/io_util.hpp"

namespace logvar {

Grid make_grid(int dim, double half_width, int points_per_axis) {
  if (dim < 1 || dim > 3) throw GridError("dim must be 1, 2, or 3");
  if (!(half_width > 0.0) || !std::isfinite(half_width))
    throw GridError("half_width must be positive and finite");
  if (points_per_axis < 3) throw GridError("points_per_axis must be >= 3");
  return Grid{dim, half_width, points_per_axis};
}

Field zero_field(const Grid& g) {
  Field u;
  u.grid = g;
  u.values.assign(g.node_count(), 0.0);
  return u;
}

void enforce_zero_boundary(Field& u) {
  for (std::size_t i = 0; i < u.values.size(); ++i)
    if (u.grid.is_boundary(i)) u.values[i] = 0.0;
}

void require_same_grid(const Field& a, const Field& b, const char* where) {
  if (!(a.grid == b.grid))
    throw GridError(std::string(where) + ": fields live on different grids");
}

double integrate(const Field& f) {
  double acc = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    const double v = f.values[i];
    if (!std::isfinite(v)) throw GridError("non-finite integrand");
    acc += f.grid.quad_weight(i) * v;
  }
  return acc;
}

double inner(const Field& a, const Field& b) {
  require_same_grid(a, b, "inner");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    acc += a.grid.quad_weight(i) * a.values[i] * b.values[i];
  return acc;
}

double norm_l2(const Field& u) {
  double acc = 0.0;
  for (std::size_t i = 0; i < u.values.size(); ++i)
    acc += u.grid.quad_weight(i) * u.values[i] * u.values[i];
  return std::sqrt(acc);
}

double grad_norm_sq(const Field& u) {
  const Grid& g = u.grid;
  const int n = g.points_per_axis;
  const double h = g.spacing();
  double hpow = 1.0;  // h^{dim-2}
  for (int k = 0; k < g.dim - 2; ++k) hpow *= h;
  for (int k = 0; k < 2 - g.dim; ++k) hpow /= h;

  double acc = 0.0;
  for (int a = 0; a < g.dim; ++a) {
    const std::size_t s = g.stride(a);
    for (std::size_t i = 0; i < u.values.size(); ++i) {
      if (g.axis_index(i, a) == n - 1) continue;
      const double d = u.values[i + s] - u.values[i];
      acc += d * d;
    }
  }
  return hpow * acc;
}

Field apply_operator(const Field& u, const std::vector<double>& weight) {
  const Grid& g = u.grid;
  if (weight.size() != u.values.size())
    throw GridError("apply_operator: weight array does not match grid");
  const double inv_h2 = 1.0 / (g.spacing() * g.spacing());
  Field out = zero_field(g);
  for (std::size_t i = 0; i < u.values.size(); ++i) {
    if (g.is_boundary(i)) continue;
    double acc = weight[i] * u.values[i];
    for (int a = 0; a < g.dim; ++a) {
      const std::size_t s = g.stride(a);
      acc += (2.0 * u.values[i] - u.values[i - s] - u.values[i + s]) * inv_h2;
    }
    out.values[i] = acc;
  }
  return out;
}

Field lin_comb(double a, const Field& u, double b, const Field& v) {
  require_same_grid(u, v, "lin_comb");
  Field out;
  out.grid = u.grid;
  out.values.resize(u.values.size());
  for (std::size_t i = 0; i < u.values.size(); ++i)
    out.values[i] = a * u.values[i] + b * v.values[i];
  return out;
}

Field scaled(const Field& u, double s) {
  Field out = u;
  for (double& v : out.values) v *= s;
  return out;
}

double boundary_mass_fraction(const Field& u) {
  const Grid& g = u.grid;
  const int n = g.points_per_axis;
  double total = 0.0, layer = 0.0;
  for (std::size_t i = 0; i < u.values.size(); ++i) {
    const double m = g.quad_weight(i) * u.values[i] * u.values[i];
    total += m;
    for (int a = 0; a < g.dim; ++a) {
      const int k = g.axis_index(i, a);
      if (k <= 1 || k >= n - 2) {
        layer += m;
        break;
      }
    }
  }
  return total > 0.0 ? layer / total : 0.0;
}

int nodal_count(const Field& u, double rel_threshold) {
  const Grid& g = u.grid;
  double umax = 0.0;
  for (double v : u.values) umax = std::max(umax, std::abs(v));
  if (umax == 0.0) return 0;
  const double thr = rel_threshold * umax;

  std::vector<signed char> sign(u.values.size(), 0);
  for (std::size_t i = 0; i < u.values.size(); ++i)
    if (std::abs(u.values[i]) > thr) sign[i] = u.values[i] > 0 ? 1 : -1;

  // flood fill same-sign components
  std::vector<char> seen(u.values.size(), 0);
  std::vector<std::size_t> stack;
  int components = 0;
  const int n = g.points_per_axis;
  for (std::size_t start = 0; start < u.values.size(); ++start) {
    if (sign[start] == 0 || seen[start]) continue;
    ++components;
    stack.assign(1, start);
    seen[start] = 1;
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      for (int a = 0; a < g.dim; ++a) {
        const std::size_t s = g.stride(a);
        const int k = g.axis_index(i, a);
        if (k > 0 && !seen[i - s] && sign[i - s] == sign[i]) {
          seen[i - s] = 1;
          stack.push_back(i - s);
        }
        if (k < n - 1 && !seen[i + s] && sign[i + s] == sign[i]) {
          seen[i + s] = 1;
          stack.push_back(i + s);
        }
      }
    }
  }
  return components > 0 ? components - 1 : 0;
}

Field symmetrized(const Field& u, int parity) {
  Field out;
  out.grid = u.grid;
  out.values.resize(u.values.size());
  const double sgn = parity == 0 ? 1.0 : -1.0;
  for (std::size_t i = 0; i < u.values.size(); ++i)
    out.values[i] = 0.5 * (u.values[i] + sgn * u.values[u.grid.mirror(i)]);
  return out;
}

double parity_defect(const Field& u, int parity) {
  const double sgn = parity == 0 ? 1.0 : -1.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < u.values.size(); ++i)
    worst = std::max(worst,
                     std::abs(u.values[i] - sgn * u.values[u.grid.mirror(i)]));
  return worst;
}

Field interp_refine(const Field& u) {
  const Grid& g = u.grid;
  const Grid fine = make_grid(g.dim, g.half_width, 2 * g.points_per_axis - 1);
  Field out = zero_field(fine);
  for (std::size_t j = 0; j < out.values.size(); ++j) {
    // multilinear average of the coarse nodes surrounding j
    double acc = 0.0;
    int corners = 1;
    std::size_t base = 0;
    std::array<std::size_t, 3> odd_stride{0, 0, 0};
    int n_odd = 0;
    for (int a = 0; a < g.dim; ++a) {
      const int idx = fine.axis_index(j, a);
      base += static_cast<std::size_t>(idx / 2) * g.stride(a);
      if (idx % 2 == 1) odd_stride[n_odd++] = g.stride(a);
    }
    corners = 1 << n_odd;
    for (int c = 0; c < corners; ++c) {
      std::size_t k = base;
      for (int b = 0; b < n_odd; ++b)
        if (c & (1 << b)) k += odd_stride[b];
      acc += u.values[k];
    }
    out.values[j] = acc / corners;
  }
  enforce_zero_boundary(out);
  return out;
}

void write_field(std::ostream& os, const Field& u) {
  os << "LOGVAR-FIELD v1 dim=" << u.grid.dim << " n=" << u.grid.points_per_axis
     << " L=" << format_double(u.grid.half_width) << "\n";
  for (double v : u.values) os << format_double(v) << "\n";
}

Field read_field(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) throw GridError("field dump: missing header");
  int dim = 0, n = 0;
  double L = 0.0;
  if (std::sscanf(header.c_str(), "LOGVAR-FIELD v1 dim=%d n=%d L=%lf", &dim, &n,
                  &L) != 3)
    throw GridError("field dump: bad header: " + header);
  Field u;
  u.grid = make_grid(dim, L, n);
  u.values.resize(u.grid.node_count());
  for (std::size_t i = 0; i < u.values.size(); ++i)
    if (!(is >> u.values[i])) throw GridError("field dump: truncated data");
  return u;
}

}  // namespace logvar
