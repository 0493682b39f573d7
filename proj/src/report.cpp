#include "logvar/report.hpp"

namespace logvar {

std::vector<double> decimated(const std::vector<double>& h,
                              std::size_t max_points) {
  if (h.size() <= max_points) return h;
  std::vector<double> out;
  const std::size_t stride = (h.size() + max_points - 1) / max_points;
  for (std::size_t i = 0; i < h.size(); i += stride) out.push_back(h[i]);
  if (out.back() != h.back()) out.push_back(h.back());
  return out;
}

}  // namespace logvar
