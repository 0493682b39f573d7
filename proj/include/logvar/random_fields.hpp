#pragma once

#include <cstdint>
#include <random>

#include "logvar/grid.hpp"

namespace logvar {

// Superposition of 2-4 Gaussian bumps with random signs, centers inside
// |x| <= L/3 and widths in [0.5, 2.5]. Smooth, decays well inside the box.
inline Field random_bump_field(const Grid& g, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nb(2, 4);
  std::uniform_real_distribution<double> amp(-1.5, 1.5);
  std::uniform_real_distribution<double> cen(-g.half_width / 3.0,
                                             g.half_width / 3.0);
  std::uniform_real_distribution<double> wid(0.5, 2.5);
  const int bumps = nb(rng);
  struct Bump {
    double a, w;
    std::array<double, 3> c;
  };
  std::vector<Bump> bs(bumps);
  for (auto& b : bs) {
    b.a = amp(rng);
    b.w = wid(rng);
    for (int d = 0; d < g.dim; ++d) b.c[d] = cen(rng);
  }
  return sample_field(g, [&](const std::array<double, 3>& x) {
    double v = 0.0;
    for (const auto& b : bs) {
      double r2 = 0.0;
      for (int d = 0; d < g.dim; ++d) {
        const double dx = x[d] - b.c[d];
        r2 += dx * dx;
      }
      v += b.a * std::exp(-0.5 * r2 / (b.w * b.w));
    }
    return v;
  });
}

}  // namespace logvar
