#pragma once

#include "core/clustering.hpp"
#include "core/distances.hpp"

namespace nclust {

// Pearson correlation over all pairs i<j between d(i,j) and the indicator
// "i and j sit in different clusters". Undefined exactly when either side
// has zero variance (k = 1, or all distances equal).
struct GammaValue {
  double gamma = 0.0;
  bool defined = false;
  size_t n_pairs = 0;
  Method method = Method::kmeans;
  size_t k = 0;
};

GammaValue hubert_gamma(const CondensedDistances& d, const ClusterAssignment& a);

// Same statistic evaluated with generating labels on the full-data distances.
GammaValue true_gamma(const CondensedDistances& d, const ClusterAssignment& truth);

}  // namespace nclust
