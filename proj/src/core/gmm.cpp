#include "core/gmm.hpp"

#include <cmath>
#include <limits>

#include "core/error.hpp"
#include "core/rng.hpp"

namespace nclust {

namespace {

constexpr double kLog2Pi = 1.8378770664093454836;
constexpr uint64_t kEmStream = 0x656d656dULL;

Eigen::VectorXd column_variances(const Eigen::MatrixXd& x) {
  Eigen::RowVectorXd mean = x.colwise().mean();
  return (x.rowwise() - mean).array().square().colwise().sum().transpose() /
         static_cast<double>(x.rows() - 1);
}

// log density of each row under each component, n x k
void log_density(const Eigen::MatrixXd& x, const Eigen::MatrixXd& means,
                 const Eigen::MatrixXd& vars, Eigen::MatrixXd& out) {
  const Eigen::Index n = x.rows();
  const Eigen::Index k = means.rows();
  const Eigen::Index d = x.cols();
  for (Eigen::Index c = 0; c < k; ++c) {
    double log_norm = 0.0;
    for (Eigen::Index j = 0; j < d; ++j) log_norm += std::log(vars(c, j));
    log_norm = -0.5 * (static_cast<double>(d) * kLog2Pi + log_norm);
    for (Eigen::Index i = 0; i < n; ++i) {
      double q = 0.0;
      for (Eigen::Index j = 0; j < d; ++j) {
        double diff = x(i, j) - means(c, j);
        q += diff * diff / vars(c, j);
      }
      out(i, c) = log_norm - 0.5 * q;
    }
  }
}

struct EmRun {
  GmmFit fit;
  bool ok = false;
};

EmRun run_em(const Eigen::MatrixXd& x, size_t k, const GmmOptions& opts, uint64_t restart_seed,
             double var_floor, const Eigen::VectorXd& col_var) {
  const Eigen::Index n = x.rows();
  const Eigen::Index d = x.cols();
  const Eigen::Index kk = static_cast<Eigen::Index>(k);

  EmRun run;
  GmmFit& fit = run.fit;
  fit.weights = Eigen::VectorXd::Constant(kk, 1.0 / static_cast<double>(k));
  fit.means.resize(kk, d);
  fit.variances.resize(kk, d);
  for (Eigen::Index c = 0; c < kk; ++c)
    fit.variances.row(c) = col_var.transpose().cwiseMax(var_floor);

  // k-means++ style spread of initial means
  Rng rng(restart_seed);
  Eigen::VectorXd d2 = Eigen::VectorXd::Constant(n, std::numeric_limits<double>::infinity());
  Eigen::Index first = static_cast<Eigen::Index>(rng.below(static_cast<uint64_t>(n)));
  fit.means.row(0) = x.row(first);
  for (Eigen::Index c = 1; c < kk; ++c) {
    for (Eigen::Index i = 0; i < n; ++i) {
      double dd = (x.row(i) - fit.means.row(c - 1)).squaredNorm();
      if (dd < d2(i)) d2(i) = dd;
    }
    double total = d2.sum();
    Eigen::Index pick;
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
    fit.means.row(c) = x.row(pick);
  }

  Eigen::MatrixXd log_dens(n, kk);
  fit.responsibilities.resize(n, kk);
  double prev_ll = -std::numeric_limits<double>::infinity();

  for (int iter = 0; iter < opts.max_iter; ++iter) {
    // E step
    log_density(x, fit.means, fit.variances, log_dens);
    double ll = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      double mx = -std::numeric_limits<double>::infinity();
      for (Eigen::Index c = 0; c < kk; ++c)
        mx = std::max(mx, log_dens(i, c) + std::log(fit.weights(c)));
      double sum = 0.0;
      for (Eigen::Index c = 0; c < kk; ++c)
        sum += std::exp(log_dens(i, c) + std::log(fit.weights(c)) - mx);
      double log_total = mx + std::log(sum);
      ll += log_total;
      for (Eigen::Index c = 0; c < kk; ++c)
        fit.responsibilities(i, c) = std::exp(log_dens(i, c) + std::log(fit.weights(c)) - log_total);
    }
    fit.loglik_trace.push_back(ll);
    fit.log_likelihood = ll;
    if (ll - prev_ll < opts.tol && iter > 0) break;
    prev_ll = ll;

    // M step; a component with essentially no mass keeps its parameters
    for (Eigen::Index c = 0; c < kk; ++c) {
      double mass = fit.responsibilities.col(c).sum();
      fit.weights(c) = std::max(mass / static_cast<double>(n), 1e-300);
      if (mass < 1e-12) continue;
      Eigen::RowVectorXd mu = (fit.responsibilities.col(c).transpose() * x) / mass;
      fit.means.row(c) = mu;
      for (Eigen::Index j = 0; j < d; ++j) {
        double acc = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
          double diff = x(i, j) - mu(j);
          acc += fit.responsibilities(i, c) * diff * diff;
        }
        fit.variances(c, j) = std::max(acc / mass, var_floor);
      }
    }
    fit.weights /= fit.weights.sum();
  }
  run.ok = std::isfinite(fit.log_likelihood);
  return run;
}

}  // namespace

std::pair<GmmFit, ClusterAssignment> gmm_em(const ScoreMatrix& s, size_t k,
                                            const GmmOptions& opts) {
  const Eigen::MatrixXd& x = s.scores;
  const Eigen::Index n = x.rows();
  const Eigen::Index d = x.cols();
  if (k < 1) fail(ErrorCategory::invalid, "gmm_em: k must be at least 1");
  if (static_cast<size_t>(n) <= k)
    fail(ErrorCategory::domain, "gmm_em: needs more observations than components");
  if (d < 1) fail(ErrorCategory::invalid, "gmm_em: empty score matrix");

  Eigen::VectorXd col_var = column_variances(x);
  const double total_var = col_var.sum();
  if (total_var <= 0.0) fail(ErrorCategory::domain, "gmm_em: zero-variance scores");
  const double var_floor = 1e-6 * total_var;

  GmmFit best;
  bool have = false;
  if (k == 1) {
    best.weights = Eigen::VectorXd::Ones(1);
    best.means.resize(1, d);
    best.means.row(0) = x.colwise().mean();
    best.variances.resize(1, d);
    for (Eigen::Index j = 0; j < d; ++j) {
      double acc = (x.col(j).array() - best.means(0, j)).square().sum();
      best.variances(0, j) = std::max(acc / static_cast<double>(n), var_floor);
    }
    best.responsibilities = Eigen::MatrixXd::Ones(n, 1);
    double ll = 0.0;
    for (Eigen::Index j = 0; j < d; ++j) {
      double q = (x.col(j).array() - best.means(0, j)).square().sum() / best.variances(0, j);
      ll += -0.5 * (static_cast<double>(n) * (kLog2Pi + std::log(best.variances(0, j))) + q);
    }
    best.log_likelihood = ll;
    best.loglik_trace.push_back(ll);
    have = true;
  } else {
    const int restarts = std::max(1, opts.restarts);
    for (int r = 0; r < restarts; ++r) {
      EmRun run = run_em(x, k, opts, derive_seed(opts.seed, {kEmStream, static_cast<uint64_t>(r)}),
                         var_floor, col_var);
      if (run.ok && (!have || run.fit.log_likelihood > best.log_likelihood)) {
        best = std::move(run.fit);
        have = true;
      }
    }
    if (!have) fail(ErrorCategory::internal, "gmm_em: every restart diverged");
  }

  ClusterAssignment a;
  a.k = k;
  a.method = Method::mclust;
  a.objective = best.log_likelihood;
  a.labels.assign(static_cast<size_t>(n), 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::Index c_best = 0;
    best.responsibilities.row(i).maxCoeff(&c_best);
    a.labels[static_cast<size_t>(i)] = static_cast<int>(c_best) + 1;
  }
  // repair empty components so labels 1..k all occur
  for (size_t c = 1; c <= k; ++c) {
    bool seen = false;
    for (int lab : a.labels)
      if (static_cast<size_t>(lab) == c) {
        seen = true;
        break;
      }
    if (seen) continue;
    std::vector<int> count(k + 1, 0);
    for (int lab : a.labels) ++count[static_cast<size_t>(lab)];
    Eigen::Index donor = -1;
    double best_r = -1.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (count[static_cast<size_t>(a.labels[static_cast<size_t>(i)])] < 2) continue;
      double r = best.responsibilities(i, static_cast<Eigen::Index>(c - 1));
      if (r > best_r) {
        best_r = r;
        donor = i;
      }
    }
    if (donor >= 0) a.labels[static_cast<size_t>(donor)] = static_cast<int>(c);
  }
  a.validate();
  return {std::move(best), std::move(a)};
}

}  // namespace nclust
