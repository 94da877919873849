#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "core/clustering.hpp"
#include "core/pca.hpp"

namespace nclust {

struct GmmOptions {
  int restarts = 10;
  int max_iter = 200;
  double tol = 1e-6;
  uint64_t seed = 0;
};

// Diagonal-covariance Gaussian mixture fitted by EM. Every variance is kept
// at or above 1e-6 times the data's total variance so responsibilities never
// collapse onto a single point.
struct GmmFit {
  Eigen::VectorXd weights;           // k, positive, sums to 1
  Eigen::MatrixXd means;             // k x d
  Eigen::MatrixXd variances;         // k x d, floored
  Eigen::MatrixXd responsibilities;  // n x k, rows sum to 1
  double log_likelihood = 0.0;
  std::vector<double> loglik_trace;  // per EM iteration, non-decreasing
};

// Init from k-means++ centers, stop when the log-likelihood gain drops below
// tol or max_iter is hit; best restart by final log-likelihood. The hard
// assignment takes each row's argmax responsibility (empty components are
// repaired from their strongest supporter).
std::pair<GmmFit, ClusterAssignment> gmm_em(const ScoreMatrix& s, size_t k,
                                            const GmmOptions& opts = {});

}  // namespace nclust
