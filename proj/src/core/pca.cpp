#include "core/pca.hpp"

#include <Eigen/SVD>

#include "core/error.hpp"

namespace nclust {

ScoreMatrix pca_scores(const MarkerMatrix& m, size_t k) {
  if (!m.imputed) fail(ErrorCategory::domain, "pca_scores requires an imputed matrix");
  return pca_scores(m.cells, k);
}

ScoreMatrix pca_scores(const Eigen::MatrixXd& data, size_t k) {
  const Eigen::Index n = data.rows();
  const Eigen::Index p = data.cols();
  const size_t k_bound = static_cast<size_t>(std::min<Eigen::Index>(n - 1, p));
  if (n < 2) fail(ErrorCategory::domain, "pca_scores needs at least 2 rows");
  if (k < 1 || k > k_bound)
    fail(ErrorCategory::invalid, "component count " + std::to_string(k) + " outside 1.." +
                                     std::to_string(k_bound));

  Eigen::MatrixXd centered = data.rowwise() - data.colwise().mean();
  const double total_var = centered.squaredNorm() / static_cast<double>(n - 1);
  if (total_var <= 0.0) fail(ErrorCategory::domain, "pca_scores on zero-variance matrix");

  Eigen::BDCSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::MatrixXd& u = svd.matrixU();
  const Eigen::MatrixXd& v = svd.matrixV();
  const Eigen::VectorXd& sing = svd.singularValues();

  ScoreMatrix s;
  s.scores.resize(n, static_cast<Eigen::Index>(k));
  s.explained_variance.resize(static_cast<Eigen::Index>(k));
  for (Eigen::Index c = 0; c < static_cast<Eigen::Index>(k); ++c) {
    // sign convention: largest-magnitude loading is positive
    Eigen::Index imax = 0;
    v.col(c).cwiseAbs().maxCoeff(&imax);
    const double flip = v(imax, c) < 0.0 ? -1.0 : 1.0;
    s.scores.col(c) = flip * sing(c) * u.col(c);
    s.explained_variance(c) = sing(c) * sing(c) / static_cast<double>(n - 1);
  }
  return s;
}

}  // namespace nclust
