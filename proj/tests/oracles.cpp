#include "oracles.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace oracle {

double pearson_direct(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("pearson_direct: sizes");
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 0 || syy <= 0) return std::numeric_limits<double>::quiet_NaN();
  return sxy / std::sqrt(sxx * syy);
}

namespace {

double partition_wss(const Eigen::MatrixXd& x, const std::vector<int>& assign, size_t k) {
  Eigen::MatrixXd centers = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(k), x.cols());
  std::vector<int> counts(k, 0);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    centers.row(assign[static_cast<size_t>(i)]) += x.row(i);
    ++counts[static_cast<size_t>(assign[static_cast<size_t>(i)])];
  }
  for (size_t c = 0; c < k; ++c) {
    if (counts[c] == 0) return std::numeric_limits<double>::infinity();
    centers.row(static_cast<Eigen::Index>(c)) /= static_cast<double>(counts[c]);
  }
  double wss = 0;
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    wss += (x.row(i) - centers.row(assign[static_cast<size_t>(i)])).squaredNorm();
  return wss;
}

}  // namespace

double min_wss_over_partitions(const Eigen::MatrixXd& x, size_t k) {
  const size_t n = static_cast<size_t>(x.rows());
  if (k < 1 || k > n) throw std::invalid_argument("min_wss_over_partitions: k");
  std::vector<int> assign(n, 0);
  double best = std::numeric_limits<double>::infinity();
  // restricted growth strings: assign[i] <= max(assign[0..i-1]) + 1
  for (;;) {
    int used = 0;
    for (int a : assign) used = std::max(used, a + 1);
    if (static_cast<size_t>(used) == k) best = std::min(best, partition_wss(x, assign, k));
    // advance
    size_t i = n - 1;
    for (;;) {
      int prefix_max = -1;
      for (size_t j = 0; j < i; ++j) prefix_max = std::max(prefix_max, assign[j]);
      if (assign[i] < prefix_max + 1 && assign[i] + 1 < static_cast<int>(k)) {
        ++assign[i];
        for (size_t j = i + 1; j < n; ++j) assign[j] = 0;
        break;
      }
      if (i <= 1) return best;  // assign[0] is pinned at 0
      --i;
    }
  }
}

std::vector<nclust::Merge> naive_complete_linkage(const nclust::CondensedDistances& d) {
  const size_t n = d.n;
  std::vector<std::vector<size_t>> clusters;
  for (size_t i = 0; i < n; ++i) clusters.push_back({i});

  std::vector<nclust::Merge> merges;
  while (clusters.size() > 1) {
    size_t best_a = 0, best_b = 1;
    double best = -1;
    for (size_t a = 0; a < clusters.size(); ++a) {
      for (size_t b = a + 1; b < clusters.size(); ++b) {
        double link = 0;
        for (size_t i : clusters[a])
          for (size_t j : clusters[b]) link = std::max(link, d.at(i, j));
        size_t lo = std::min(clusters[a][0], clusters[b][0]);
        size_t hi = std::max(clusters[a][0], clusters[b][0]);
        size_t cur_lo = std::min(clusters[best_a][0], clusters[best_b][0]);
        size_t cur_hi = std::max(clusters[best_a][0], clusters[best_b][0]);
        if (best < 0 || link < best ||
            (link == best && (lo < cur_lo || (lo == cur_lo && hi < cur_hi)))) {
          best = link;
          best_a = a;
          best_b = b;
        }
      }
    }
    nclust::Merge m;
    m.left = std::min(clusters[best_a][0], clusters[best_b][0]);
    m.right = std::max(clusters[best_a][0], clusters[best_b][0]);
    m.height = best;
    merges.push_back(m);
    clusters[best_a].insert(clusters[best_a].end(), clusters[best_b].begin(),
                            clusters[best_b].end());
    std::sort(clusters[best_a].begin(), clusters[best_a].end());
    clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(best_b));
  }
  return merges;
}

EigPca pca_by_covariance_eig(const Eigen::MatrixXd& data, size_t k) {
  const Eigen::Index n = data.rows();
  Eigen::MatrixXd centered = data.rowwise() - data.colwise().mean();
  Eigen::MatrixXd cov = centered.transpose() * centered / static_cast<double>(n - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  EigPca out;
  out.scores.resize(n, static_cast<Eigen::Index>(k));
  out.variances.resize(static_cast<Eigen::Index>(k));
  const Eigen::Index p = cov.rows();
  for (size_t c = 0; c < k; ++c) {
    // eigenvalues come back ascending
    Eigen::Index src = p - 1 - static_cast<Eigen::Index>(c);
    out.scores.col(static_cast<Eigen::Index>(c)) = centered * eig.eigenvectors().col(src);
    out.variances(static_cast<Eigen::Index>(c)) = eig.eigenvalues()(src);
  }
  return out;
}

}  // namespace oracle
