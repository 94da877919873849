#include "core/popsim.hpp"

#include <cmath>
#include <limits>

#include "core/distances.hpp"
#include "core/error.hpp"
#include "core/gamma.hpp"
#include "core/rng.hpp"

namespace nclust {

namespace {
constexpr uint64_t kAncestralStream = 0x616e6366ULL;
constexpr uint64_t kClusterStream = 0x636c6672ULL;
constexpr uint64_t kCellStream = 0x63656c6cULL;
constexpr uint64_t kMaskStream = 0x6d61736bULL;
constexpr uint64_t kCalibrationStream = 0x63616c69ULL;

// frozen by calibrate_separation against the k=3 targets 0.77 / 0.58 / 0.46
constexpr double kPresetDrift[3] = {0.0405, 0.0143, 0.0082};
}  // namespace

const char* preset_name(SeparationPreset p) {
  switch (p) {
    case SeparationPreset::low: return "low";
    case SeparationPreset::med: return "med";
    case SeparationPreset::high: return "high";
  }
  return "?";
}

double preset_drift(SeparationPreset p) { return kPresetDrift[static_cast<size_t>(p)]; }

void SimConfig::validate() const {
  if (n_obs < 2) fail(ErrorCategory::invalid, "simulation needs at least 2 observations");
  if (n_markers < 1) fail(ErrorCategory::invalid, "simulation needs at least 1 marker");
  if (n_clusters < 1) fail(ErrorCategory::invalid, "cluster count must be at least 1");
  if (n_obs % n_clusters != 0)
    fail(ErrorCategory::invalid, "observation count must divide evenly by cluster count");
  if (!(drift > 0.0 && drift < 1.0)) fail(ErrorCategory::invalid, "drift must lie in (0,1)");
  if (missing_rate < 0.0 || missing_rate >= 1.0)
    fail(ErrorCategory::invalid, "missing rate must lie in [0,1)");
}

LabeledDataset simulate_markers(const SimConfig& cfg) {
  cfg.validate();
  const size_t n = cfg.n_obs;
  const size_t p = cfg.n_markers;
  const size_t k = cfg.n_clusters;
  const size_t per_cluster = n / k;

  Rng anc = Rng::stream(cfg.seed, {kAncestralStream});
  std::vector<double> ancestral(p);
  for (size_t j = 0; j < p; ++j) ancestral[j] = anc.uniform(0.05, 0.95);

  // per-cluster marker frequencies drifted around the ancestral ones
  std::vector<std::vector<double>> freq(k, std::vector<double>(p));
  const double ratio = (1.0 - cfg.drift) / cfg.drift;
  for (size_t c = 0; c < k; ++c) {
    Rng rng = Rng::stream(cfg.seed, {kClusterStream, c});
    for (size_t j = 0; j < p; ++j) {
      double a = ancestral[j] * ratio;
      double b = (1.0 - ancestral[j]) * ratio;
      freq[c][j] = rng.beta(a, b);
    }
  }

  LabeledDataset out;
  out.config = cfg;
  out.markers.cells.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(p));
  out.markers.imputed = true;
  out.truth.k = k;
  out.truth.method = Method::kmeans;
  out.truth.labels.resize(n);

  for (size_t c = 0; c < k; ++c) {
    Rng rng = Rng::stream(cfg.seed, {kCellStream, c});
    for (size_t r = 0; r < per_cluster; ++r) {
      const size_t i = c * per_cluster + r;
      out.truth.labels[i] = static_cast<int>(c) + 1;
      for (size_t j = 0; j < p; ++j)
        out.markers.cells(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            rng.bernoulli(freq[c][j]) ? 1.0 : 0.0;
    }
  }

  if (cfg.missing_rate > 0.0) {
    Rng rng = Rng::stream(cfg.seed, {kMaskStream});
    out.markers.imputed = false;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < p; ++j)
        if (rng.bernoulli(cfg.missing_rate))
          out.markers.cells(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
              std::numeric_limits<double>::quiet_NaN();
  }

  out.markers.row_ids.reserve(n);
  for (size_t i = 0; i < n; ++i) out.markers.row_ids.push_back("s" + std::to_string(i + 1));
  out.markers.marker_names.reserve(p);
  for (size_t j = 0; j < p; ++j) out.markers.marker_names.push_back("m" + std::to_string(j + 1));
  out.truth.objective = 0.0;
  return out;
}

double mean_true_gamma(const SimConfig& cfg, int replicates) {
  double sum = 0.0;
  int defined = 0;
  for (int r = 0; r < replicates; ++r) {
    SimConfig c = cfg;
    c.missing_rate = 0.0;
    c.seed = derive_seed(cfg.seed, {kCalibrationStream, static_cast<uint64_t>(r)});
    LabeledDataset data = simulate_markers(c);
    GammaValue g = true_gamma(manhattan_distances(data.markers.cells), data.truth);
    if (g.defined) {
      sum += g.gamma;
      ++defined;
    }
  }
  if (defined == 0) fail(ErrorCategory::domain, "true gamma undefined for every replicate");
  return sum / defined;
}

double calibrate_separation(double target_true_gamma, size_t k, SimConfig base, double* achieved,
                            int replicates) {
  if (!(target_true_gamma > 0.0 && target_true_gamma < 1.0))
    fail(ErrorCategory::invalid, "target true gamma must lie in (0,1)");
  base.n_clusters = k;
  base.validate();

  double lo = 1e-4, hi = 1.0 - 1e-4;
  auto eval = [&](double f) {
    SimConfig c = base;
    c.drift = f;
    return mean_true_gamma(c, replicates);
  };
  double glo = eval(lo);
  double ghi = eval(hi);
  if (target_true_gamma < glo || target_true_gamma > ghi)
    fail(ErrorCategory::domain,
         "target " + std::to_string(target_true_gamma) + " outside achievable range [" +
             std::to_string(glo) + ", " + std::to_string(ghi) + "]");

  double f = 0.5 * (lo + hi);
  double g = 0.0;
  for (int iter = 0; iter < 20; ++iter) {
    f = 0.5 * (lo + hi);
    g = eval(f);
    if (std::fabs(g - target_true_gamma) <= 0.02) break;
    if (g < target_true_gamma)
      lo = f;
    else
      hi = f;
  }
  if (achieved) *achieved = g;
  return f;
}

}  // namespace nclust
