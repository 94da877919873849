#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "core/clustering.hpp"
#include "core/marker_matrix.hpp"

namespace nclust {

struct KmeansOptions {
  int restarts = 10;
  int max_iter = 100;
  uint64_t seed = 0;
  // Try every k-subset of distinct rows as initial centers instead of
  // sampled k-means++ starts. Only sensible for small n; guarded at 25 rows.
  bool exhaustive_init = false;
};

// Lloyd iterations on squared Euclidean distance with k-means++ seeding;
// best of `restarts` runs by WSS. Empty clusters are reseeded from the point
// farthest from its center. Ties break on the lowest index throughout, so a
// fixed seed gives a fixed result. objective = final WSS.
ClusterAssignment kmeans(const Eigen::MatrixXd& x, size_t k, const KmeansOptions& opts = {});
ClusterAssignment kmeans(const MarkerMatrix& m, size_t k, const KmeansOptions& opts = {});

size_t count_distinct_rows(const Eigen::MatrixXd& x);

}  // namespace nclust
