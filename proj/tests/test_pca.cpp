#include <cmath>

#include "core/error.hpp"
#include "core/pca.hpp"
#include "core/rng.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace nclust;

namespace {

Eigen::MatrixXd random_matrix(size_t n, size_t p, uint64_t seed) {
  Eigen::MatrixXd x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(p));
  Rng rng(seed);
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j) x(i, j) = rng.normal();
  return x;
}

double total_column_variance(const Eigen::MatrixXd& x) {
  Eigen::MatrixXd centered = x.rowwise() - x.colwise().mean();
  return centered.squaredNorm() / static_cast<double>(x.rows() - 1);
}

}  // namespace

TEST_CASE("single varying column puts all variance on PC1") {
  Eigen::MatrixXd x = Eigen::MatrixXd::Constant(6, 4, 0.5);
  x.col(2) << 0, 1, 0, 1, 1, 0;
  ScoreMatrix s = pca_scores(x, 3);
  double col_var = total_column_variance(x);
  CHECK(s.explained_variance(0) == doctest::Approx(col_var).epsilon(1e-9));
  CHECK(std::fabs(s.explained_variance(1)) < 1e-12);
  CHECK(std::fabs(s.explained_variance(2)) < 1e-12);
}

TEST_CASE("explained variance sums to the total at full rank") {
  for (uint64_t seed : {1u, 2u, 3u}) {
    Eigen::MatrixXd x = random_matrix(10, 20, seed);
    size_t k = 9;  // min(n-1, p)
    ScoreMatrix s = pca_scores(x, k);
    CHECK(s.explained_variance.sum() ==
          doctest::Approx(total_column_variance(x)).epsilon(1e-9));
  }
}

TEST_CASE("score columns are orthogonal and variances non-increasing") {
  Eigen::MatrixXd x = random_matrix(20, 50, 77);
  ScoreMatrix s = pca_scores(x, 10);
  for (size_t a = 0; a < 10; ++a) {
    for (size_t b = a + 1; b < 10; ++b) {
      double dot = std::fabs(s.scores.col(a).dot(s.scores.col(b)));
      double scale = s.scores.col(a).norm() * s.scores.col(b).norm();
      CHECK(dot <= 1e-8 * std::max(scale, 1.0));
    }
    if (a > 0) CHECK(s.explained_variance(a) <= s.explained_variance(a - 1) + 1e-12);
  }
}

TEST_CASE("scores match the covariance-eigendecomposition route up to sign") {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    Eigen::MatrixXd x = random_matrix(20, 50, 1000 + seed);
    size_t k = 5;
    ScoreMatrix s = pca_scores(x, k);
    oracle::EigPca ref = oracle::pca_by_covariance_eig(x, k);
    for (size_t c = 0; c < k; ++c) {
      double plus = (s.scores.col(c) - ref.scores.col(c)).norm();
      double minus = (s.scores.col(c) + ref.scores.col(c)).norm();
      CHECK(std::min(plus, minus) < 1e-8 * std::max(1.0, ref.scores.col(c).norm()));
      CHECK(s.explained_variance(c) == doctest::Approx(ref.variances(c)).epsilon(1e-8));
    }
  }
}

TEST_CASE("increasing k keeps earlier components fixed") {
  Eigen::MatrixXd x = random_matrix(15, 30, 5);
  ScoreMatrix small = pca_scores(x, 3);
  ScoreMatrix big = pca_scores(x, 7);
  CHECK((big.scores.leftCols(3) - small.scores).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("pca input validation") {
  Eigen::MatrixXd x = random_matrix(8, 5, 6);
  CHECK_THROWS_AS(pca_scores(x, 0), Error);
  CHECK_THROWS_AS(pca_scores(x, 6), Error);  // min(n-1, p) = 5
  Eigen::MatrixXd flat = Eigen::MatrixXd::Constant(5, 4, 1.0);
  CHECK_THROWS_AS(pca_scores(flat, 2), Error);
  MarkerMatrix raw;
  raw.cells = x;
  raw.imputed = false;
  CHECK_THROWS_AS(pca_scores(raw, 2), Error);
}
