#include "core/gamma.hpp"

#include <cmath>

#include "core/error.hpp"

namespace nclust {

GammaValue hubert_gamma(const CondensedDistances& d, const ClusterAssignment& a) {
  if (d.n != a.n())
    fail(ErrorCategory::invalid, "hubert_gamma: distance and assignment sizes differ");

  GammaValue g;
  g.method = a.method;
  g.k = a.k;
  g.n_pairs = d.values.size();

  // single pass, Welford co-moments
  double mean_d = 0.0, mean_y = 0.0, m2_d = 0.0, m2_y = 0.0, co = 0.0;
  size_t count = 0;
  size_t idx = 0;
  for (size_t i = 0; i < d.n; ++i) {
    for (size_t j = i + 1; j < d.n; ++j, ++idx) {
      const double dv = d.values[idx];
      const double yv = a.labels[i] != a.labels[j] ? 1.0 : 0.0;
      ++count;
      const double dd = dv - mean_d;
      mean_d += dd / static_cast<double>(count);
      const double dy = yv - mean_y;
      mean_y += dy / static_cast<double>(count);
      co += dd * (yv - mean_y);
      m2_d += dd * (dv - mean_d);
      m2_y += dy * (yv - mean_y);
    }
  }
  if (count < 2 || m2_d <= 0.0 || m2_y <= 0.0) {
    g.defined = false;
    return g;
  }
  g.gamma = co / std::sqrt(m2_d * m2_y);
  if (g.gamma > 1.0) g.gamma = 1.0;
  if (g.gamma < -1.0) g.gamma = -1.0;
  g.defined = true;
  return g;
}

GammaValue true_gamma(const CondensedDistances& d, const ClusterAssignment& truth) {
  return hubert_gamma(d, truth);
}

}  // namespace nclust
