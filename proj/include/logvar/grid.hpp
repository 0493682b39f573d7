#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace logvar {

class GridError : public std::runtime_error {
 public:
  explicit GridError(const std::string& what) : std::runtime_error(what) {}
};

// Tensor-product grid on [-L, L]^dim with zero Dirichlet boundary.
// Nodes are ordered row-major with axis 0 slowest; along each axis
// x_i = (i - (n-1)/2) * h, so the node set is exactly symmetric under
// x -> -x in floating point.
struct Grid {
  int dim = 1;
  double half_width = 12.0;
  int points_per_axis = 961;

  double spacing() const { return 2.0 * half_width / (points_per_axis - 1); }

  std::size_t node_count() const {
    std::size_t c = 1;
    for (int a = 0; a < dim; ++a) c *= static_cast<std::size_t>(points_per_axis);
    return c;
  }

  std::size_t stride(int axis) const {
    std::size_t s = 1;
    for (int a = dim - 1; a > axis; --a) s *= static_cast<std::size_t>(points_per_axis);
    return s;
  }

  int axis_index(std::size_t flat, int axis) const {
    return static_cast<int>((flat / stride(axis)) % static_cast<std::size_t>(points_per_axis));
  }

  double axis_coord(int i) const {
    return (static_cast<double>(i) - 0.5 * (points_per_axis - 1)) * spacing();
  }

  // Coordinates of a node; only the first `dim` entries are meaningful.
  std::array<double, 3> coords(std::size_t flat) const {
    std::array<double, 3> x{0.0, 0.0, 0.0};
    for (int a = 0; a < dim; ++a) x[a] = axis_coord(axis_index(flat, a));
    return x;
  }

  bool is_boundary(std::size_t flat) const {
    for (int a = 0; a < dim; ++a) {
      const int i = axis_index(flat, a);
      if (i == 0 || i == points_per_axis - 1) return true;
    }
    return false;
  }

  // Tensor-product trapezoid weight.
  double quad_weight(std::size_t flat) const {
    const double h = spacing();
    double w = 1.0;
    for (int a = 0; a < dim; ++a) {
      const int i = axis_index(flat, a);
      w *= (i == 0 || i == points_per_axis - 1) ? 0.5 * h : h;
    }
    return w;
  }

  // Flat index of the point-reflected node (x -> -x).
  std::size_t mirror(std::size_t flat) const {
    std::size_t m = 0;
    for (int a = 0; a < dim; ++a) {
      const int i = axis_index(flat, a);
      m += static_cast<std::size_t>(points_per_axis - 1 - i) * stride(a);
    }
    return m;
  }

  bool operator==(const Grid&) const = default;
};

Grid make_grid(int dim, double half_width, int points_per_axis);

// Real-valued grid function. Boundary entries are kept at zero by every
// constructor and solver in this library.
struct Field {
  Grid grid;
  std::vector<double> values;
};

Field zero_field(const Grid& g);

// Samples f(x) at the nodes and zeroes the boundary ring.
template <class F>
Field sample_field(const Grid& g, F&& f) {
  Field u;
  u.grid = g;
  u.values.resize(g.node_count());
  for (std::size_t i = 0; i < u.values.size(); ++i)
    u.values[i] = g.is_boundary(i) ? 0.0 : f(g.coords(i));
  return u;
}

void enforce_zero_boundary(Field& u);
void require_same_grid(const Field& a, const Field& b, const char* where);

// Trapezoidal quadrature of the samples. Throws GridError on non-finite input.
double integrate(const Field& f);
// Quadrature inner product and L2 norm.
double inner(const Field& a, const Field& b);
double norm_l2(const Field& u);

// Link-based squared gradient seminorm: sum over axis links of
// h^{dim-2} (u_{i+1} - u_i)^2, with u = 0 outside the box.
double grad_norm_sq(const Field& u);

// A u = -lap_h u + weight .* u with the second-order central stencil and
// Dirichlet data; output is zero on the boundary. weight must have one
// entry per node.
Field apply_operator(const Field& u, const std::vector<double>& weight);

// a*u + b*v
Field lin_comb(double a, const Field& u, double b, const Field& v);
Field scaled(const Field& u, double s);

// Fraction of the L2 mass carried by the outermost two node layers.
double boundary_mass_fraction(const Field& u);

// Number of interior sign changes: connected same-sign components among
// nodes with |u| > rel_threshold * max|u|, minus one (zero for u == 0).
int nodal_count(const Field& u, double rel_threshold = 1e-8);

// Parity symmetrization about the origin; parity 0 keeps the even part,
// parity 1 the odd part.
Field symmetrized(const Field& u, int parity);
double parity_defect(const Field& u, int parity);

// Midpoint refinement n -> 2n-1 (multilinear interpolation onto the
// refined grid).
Field interp_refine(const Field& u);

// Field dump format:
//   LOGVAR-FIELD v1 dim=<N> n=<points_per_axis> L=<half_width>
// followed by one decimal value per line, row-major.
void write_field(std::ostream& os, const Field& u);
Field read_field(std::istream& is);

}  // namespace logvar
