#pragma once

// Independent reference computations used to check the production paths.
// Everything here is deliberately written the slow, direct way.

#include <Eigen/Dense>
#include <vector>

#include "core/distances.hpp"
#include "core/hclust.hpp"

namespace oracle {

// textbook two-pass Pearson correlation
double pearson_direct(const std::vector<double>& x, const std::vector<double>& y);

// exact minimum within-cluster sum of squares over every partition of the
// rows into exactly k non-empty groups (restricted growth enumeration)
double min_wss_over_partitions(const Eigen::MatrixXd& x, size_t k);

// greedy complete-linkage agglomeration with the inter-cluster distance
// recomputed each step as the max over original member pairs; ties break on
// the lexicographically smallest (left, right) pair of smallest-leaf ids
std::vector<nclust::Merge> naive_complete_linkage(const nclust::CondensedDistances& d);

// principal component scores through the covariance eigendecomposition route
struct EigPca {
  Eigen::MatrixXd scores;
  Eigen::VectorXd variances;
};
EigPca pca_by_covariance_eig(const Eigen::MatrixXd& data, size_t k);

}  // namespace oracle
