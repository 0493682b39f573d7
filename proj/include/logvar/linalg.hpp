#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace logvar {

// Symmetric positive definite tridiagonal factorization (Thomas / LDL^T).
// diag has n entries, lower the n-1 subdiagonal entries.
class TridiagSPD {
 public:
  TridiagSPD() = default;
  TridiagSPD(std::vector<double> diag, std::vector<double> lower)
      : d_(std::move(diag)), e_(std::move(lower)) {
    const std::size_t n = d_.size();
    l_.assign(n > 0 ? n - 1 : 0, 0.0);
    for (std::size_t i = 1; i < n; ++i) {
      l_[i - 1] = e_[i - 1] / d_[i - 1];
      d_[i] -= l_[i - 1] * e_[i - 1];
      if (!(d_[i] > 0.0))
        throw std::runtime_error("TridiagSPD: matrix not positive definite");
    }
  }

  void solve(std::vector<double>& b) const {
    const std::size_t n = d_.size();
    for (std::size_t i = 1; i < n; ++i) b[i] -= l_[i - 1] * b[i - 1];
    b[n - 1] /= d_[n - 1];
    for (std::size_t i = n - 1; i-- > 0;)
      b[i] = b[i] / d_[i] - l_[i] * b[i + 1];
  }

 private:
  std::vector<double> d_, e_, l_;
};

// General tridiagonal LU with partial pivoting (possibly indefinite systems,
// e.g. Newton Jacobians). Solves in place.
class TridiagLU {
 public:
  TridiagLU(std::vector<double> diag, std::vector<double> lower,
            std::vector<double> upper)
      : n_(diag.size()), d_(std::move(diag)), dl_(std::move(lower)),
        du_(std::move(upper)), du2_(n_ > 2 ? n_ - 2 : 0, 0.0), piv_(n_, 0) {
    for (std::size_t i = 0; i + 1 < n_; ++i) {
      if (std::abs(d_[i]) >= std::abs(dl_[i])) {
        piv_[i] = 0;
        if (d_[i] == 0.0) d_[i] = 1e-300;
        const double m = dl_[i] / d_[i];
        dl_[i] = m;
        d_[i + 1] -= m * du_[i];
        if (i + 2 < n_) du2_[i] = 0.0;
      } else {
        piv_[i] = 1;
        const double m = d_[i] / dl_[i];
        d_[i] = dl_[i];
        dl_[i] = m;
        const double tmp = d_[i + 1];
        d_[i + 1] = du_[i] - m * tmp;
        du_[i] = tmp;
        if (i + 2 < n_) {
          du2_[i] = du_[i + 1];
          du_[i + 1] = -m * du2_[i];
        }
      }
    }
    if (d_[n_ - 1] == 0.0) d_[n_ - 1] = 1e-300;
  }

  void solve(std::vector<double>& b) const {
    for (std::size_t i = 0; i + 1 < n_; ++i) {
      if (piv_[i] == 0) {
        b[i + 1] -= dl_[i] * b[i];
      } else {
        const double tmp = b[i];
        b[i] = b[i + 1];
        b[i + 1] = tmp - dl_[i] * b[i];
      }
    }
    b[n_ - 1] /= d_[n_ - 1];
    if (n_ >= 2) {
      b[n_ - 2] = (b[n_ - 2] - du_[n_ - 2] * b[n_ - 1]) / d_[n_ - 2];
      for (std::size_t i = n_ - 2; i-- > 0;)
        b[i] = (b[i] - du_[i] * b[i + 1] - du2_[i] * b[i + 2]) / d_[i];
    }
  }

 private:
  std::size_t n_;
  std::vector<double> d_, dl_, du_, du2_;
  std::vector<int> piv_;
};

// Matrix-free conjugate gradients for SPD operators. Returns the iteration
// count; throws if the relative residual target is not met.
template <class Op>
long cg_solve(Op&& apply, const std::vector<double>& b, std::vector<double>& x,
              double tol_rel = 1e-12, long max_iter = 200000) {
  const std::size_t n = b.size();
  x.assign(n, 0.0);
  std::vector<double> r = b, p = b, ap(n);
  double rs = 0.0;
  for (double v : r) rs += v * v;
  const double target = tol_rel * tol_rel * rs;
  if (rs == 0.0) return 0;
  long it = 0;
  while (it < max_iter) {
    apply(p, ap);
    double pap = 0.0;
    for (std::size_t i = 0; i < n; ++i) pap += p[i] * ap[i];
    if (!(pap > 0.0))
      throw std::runtime_error("cg_solve: operator not positive definite");
    const double alpha = rs / pap;
    double rs2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
      rs2 += r[i] * r[i];
    }
    ++it;
    if (rs2 <= target) return it;
    const double beta = rs2 / rs;
    for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
    rs = rs2;
  }
  throw std::runtime_error("cg_solve: no convergence within iteration cap");
}

}  // namespace logvar
