#pragma once

#include <Eigen/Dense>
#include <cstddef>

#include "core/marker_matrix.hpp"

namespace nclust {

// Principal component scores of a centered data matrix. Columns are mutually
// orthogonal and explained_variance is non-increasing.
struct ScoreMatrix {
  Eigen::MatrixXd scores;              // n x k
  Eigen::VectorXd explained_variance;  // length k

  size_t n_rows() const { return static_cast<size_t>(scores.rows()); }
  size_t n_comp() const { return static_cast<size_t>(scores.cols()); }

  ScoreMatrix head_components(size_t k) const {
    ScoreMatrix s;
    s.scores = scores.leftCols(static_cast<Eigen::Index>(k));
    s.explained_variance = explained_variance.head(static_cast<Eigen::Index>(k));
    return s;
  }
};

// Scores are projections onto the top-k right singular directions of the
// column-centered matrix (columns are centered, not scaled). Each component's
// sign is fixed by making its largest-magnitude loading positive, so repeated
// runs and resamples are comparable. 1 <= k <= min(n-1, p).
ScoreMatrix pca_scores(const MarkerMatrix& m, size_t k);
ScoreMatrix pca_scores(const Eigen::MatrixXd& data, size_t k);

}  // namespace nclust
