#include "core/kmeans.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "core/error.hpp"
#include "core/rng.hpp"

namespace nclust {

namespace {

constexpr uint64_t kRestartStream = 0x6b6d6565ULL;

struct LloydResult {
  std::vector<int> assign;  // 0-based center index per row
  double wss = std::numeric_limits<double>::infinity();
};

// Squared distances from every row to every center, then per-row argmin with
// lowest-index tie-break.
void assign_rows(const Eigen::MatrixXd& x, const Eigen::MatrixXd& centers,
                 const Eigen::VectorXd& x_sq, std::vector<int>& assign, Eigen::VectorXd& best_d2) {
  const Eigen::Index n = x.rows();
  const Eigen::Index k = centers.rows();
  Eigen::VectorXd c_sq = centers.rowwise().squaredNorm();
  Eigen::MatrixXd cross = x * centers.transpose();  // n x k
  for (Eigen::Index i = 0; i < n; ++i) {
    int best = 0;
    double bd = x_sq(i) + c_sq(0) - 2.0 * cross(i, 0);
    for (Eigen::Index c = 1; c < k; ++c) {
      double d2 = x_sq(i) + c_sq(c) - 2.0 * cross(i, c);
      if (d2 < bd) {
        bd = d2;
        best = static_cast<int>(c);
      }
    }
    assign[static_cast<size_t>(i)] = best;
    best_d2(i) = std::max(0.0, bd);
  }
}

double exact_wss(const Eigen::MatrixXd& x, const Eigen::MatrixXd& centers,
                 const std::vector<int>& assign) {
  double wss = 0.0;
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    wss += (x.row(i) - centers.row(assign[static_cast<size_t>(i)])).squaredNorm();
  return wss;
}

void update_centers(const Eigen::MatrixXd& x, size_t k, const std::vector<int>& assign,
                    Eigen::MatrixXd& centers, std::vector<Eigen::Index>& counts) {
  centers.setZero();
  std::fill(counts.begin(), counts.end(), 0);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const int c = assign[static_cast<size_t>(i)];
    centers.row(c) += x.row(i);
    ++counts[static_cast<size_t>(c)];
  }
  for (size_t c = 0; c < k; ++c)
    if (counts[c] > 0) centers.row(static_cast<Eigen::Index>(c)) /= static_cast<double>(counts[c]);
}

LloydResult lloyd(const Eigen::MatrixXd& x, size_t k, Eigen::MatrixXd centers, int max_iter) {
  const Eigen::Index n = x.rows();
  Eigen::VectorXd x_sq = x.rowwise().squaredNorm();
  LloydResult r;
  r.assign.assign(static_cast<size_t>(n), 0);
  std::vector<int> prev;
  Eigen::VectorXd best_d2(n);
  std::vector<Eigen::Index> counts(k, 0);

  for (int iter = 0; iter < max_iter; ++iter) {
    assign_rows(x, centers, x_sq, r.assign, best_d2);
    // reseed any empty cluster from the point farthest from its center
    for (;;) {
      std::fill(counts.begin(), counts.end(), 0);
      for (int a : r.assign) ++counts[static_cast<size_t>(a)];
      size_t empty = k;
      for (size_t c = 0; c < k; ++c)
        if (counts[c] == 0) {
          empty = c;
          break;
        }
      if (empty == k) break;
      Eigen::Index far_i = 0;
      double far_d = -1.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (counts[static_cast<size_t>(r.assign[static_cast<size_t>(i)])] <= 1) continue;
        if (best_d2(i) > far_d) {
          far_d = best_d2(i);
          far_i = i;
        }
      }
      centers.row(static_cast<Eigen::Index>(empty)) = x.row(far_i);
      r.assign[static_cast<size_t>(far_i)] = static_cast<int>(empty);
      best_d2(far_i) = 0.0;
    }
    if (r.assign == prev) break;
    prev = r.assign;
    update_centers(x, k, r.assign, centers, counts);
  }
  r.wss = exact_wss(x, centers, r.assign);
  return r;
}

Eigen::MatrixXd kmeanspp_centers(const Eigen::MatrixXd& x, size_t k, Rng& rng) {
  const Eigen::Index n = x.rows();
  Eigen::MatrixXd centers(static_cast<Eigen::Index>(k), x.cols());
  Eigen::VectorXd d2 = Eigen::VectorXd::Constant(n, std::numeric_limits<double>::infinity());
  Eigen::Index first = static_cast<Eigen::Index>(rng.below(static_cast<uint64_t>(n)));
  centers.row(0) = x.row(first);
  for (size_t c = 1; c < k; ++c) {
    for (Eigen::Index i = 0; i < n; ++i) {
      double d = (x.row(i) - centers.row(static_cast<Eigen::Index>(c - 1))).squaredNorm();
      if (d < d2(i)) d2(i) = d;
    }
    double total = d2.sum();
    Eigen::Index pick = 0;
    if (total > 0.0) {
      double target = rng.uniform01() * total;
      double acc = 0.0;
      pick = n - 1;
      for (Eigen::Index i = 0; i < n; ++i) {
        acc += d2(i);
        if (acc >= target) {
          pick = i;
          break;
        }
      }
    } else {
      pick = static_cast<Eigen::Index>(rng.below(static_cast<uint64_t>(n)));
    }
    centers.row(static_cast<Eigen::Index>(c)) = x.row(pick);
  }
  return centers;
}

std::vector<Eigen::Index> distinct_row_reps(const Eigen::MatrixXd& x) {
  const Eigen::Index n = x.rows();
  std::vector<Eigen::Index> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  auto row_less = [&](Eigen::Index a, Eigen::Index b) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      if (x(a, j) < x(b, j)) return true;
      if (x(a, j) > x(b, j)) return false;
    }
    return false;
  };
  std::sort(order.begin(), order.end(), row_less);
  std::vector<Eigen::Index> reps;
  for (size_t i = 0; i < order.size(); ++i) {
    if (i == 0 || row_less(order[i - 1], order[i])) reps.push_back(order[i]);
  }
  std::sort(reps.begin(), reps.end());
  return reps;
}

ClusterAssignment finish(size_t k, const LloydResult& best) {
  ClusterAssignment a;
  a.k = k;
  a.method = Method::kmeans;
  a.objective = best.wss;
  a.labels.resize(best.assign.size());
  for (size_t i = 0; i < best.assign.size(); ++i) a.labels[i] = best.assign[i] + 1;
  a.validate();
  return a;
}

}  // namespace

size_t count_distinct_rows(const Eigen::MatrixXd& x) { return distinct_row_reps(x).size(); }

ClusterAssignment kmeans(const MarkerMatrix& m, size_t k, const KmeansOptions& opts) {
  if (!m.imputed) fail(ErrorCategory::domain, "kmeans requires an imputed matrix");
  return kmeans(m.cells, k, opts);
}

ClusterAssignment kmeans(const Eigen::MatrixXd& x, size_t k, const KmeansOptions& opts) {
  const Eigen::Index n = x.rows();
  if (n < 1 || x.cols() < 1) fail(ErrorCategory::invalid, "kmeans: empty input");
  if (k < 1) fail(ErrorCategory::invalid, "kmeans: k must be at least 1");

  if (k == 1) {
    LloydResult r;
    r.assign.assign(static_cast<size_t>(n), 0);
    Eigen::MatrixXd center = x.colwise().mean();
    r.wss = (x.rowwise() - center.row(0)).squaredNorm();
    return finish(1, r);
  }

  std::vector<Eigen::Index> reps = distinct_row_reps(x);
  if (k > reps.size())
    fail(ErrorCategory::domain, "kmeans: k = " + std::to_string(k) + " exceeds " +
                                    std::to_string(reps.size()) + " distinct rows");

  LloydResult best;
  if (opts.exhaustive_init) {
    if (reps.size() > 25)
      fail(ErrorCategory::invalid, "kmeans: exhaustive_init limited to 25 distinct rows");
    std::vector<size_t> pick(k);
    for (size_t i = 0; i < k; ++i) pick[i] = i;
    for (;;) {
      Eigen::MatrixXd centers(static_cast<Eigen::Index>(k), x.cols());
      for (size_t i = 0; i < k; ++i) centers.row(static_cast<Eigen::Index>(i)) = x.row(reps[pick[i]]);
      LloydResult r = lloyd(x, k, std::move(centers), opts.max_iter);
      if (r.wss < best.wss) best = std::move(r);
      // next combination
      size_t i = k;
      while (i > 0 && pick[i - 1] == reps.size() - k + (i - 1)) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  } else {
    const int restarts = std::max(1, opts.restarts);
    for (int r = 0; r < restarts; ++r) {
      Rng rng = Rng::stream(opts.seed, {kRestartStream, static_cast<uint64_t>(r)});
      Eigen::MatrixXd centers = kmeanspp_centers(x, k, rng);
      LloydResult res = lloyd(x, k, std::move(centers), opts.max_iter);
      if (res.wss < best.wss) best = std::move(res);
    }
  }
  return finish(k, best);
}

}  // namespace nclust
