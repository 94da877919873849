#pragma once

#include <cstdint>
#include <optional>

#include "core/clustering.hpp"
#include "core/marker_matrix.hpp"

namespace nclust {

// Named separation levels, least to most admixed: `low` gives the most
// separated clusters. Drift values are calibrated so the mean true gamma at
// three clusters lands near 0.77 / 0.58 / 0.46.
enum class SeparationPreset { low = 0, med = 1, high = 2 };
const char* preset_name(SeparationPreset p);
double preset_drift(SeparationPreset p);

struct SimConfig {
  size_t n_obs = 200;
  size_t n_markers = 400;
  size_t n_clusters = 3;
  double drift = 0.3;         // F in (0,1); larger = more separated
  double missing_rate = 0.0;  // optional uniform masking for imputation tests
  uint64_t seed = 0;

  void validate() const;
};

struct LabeledDataset {
  MarkerMatrix markers;  // fully observed and imputed unless missing_rate > 0
  ClusterAssignment truth;
  SimConfig config;
};

// Island-model surrogate: each marker gets an ancestral frequency from
// Uniform(0.05, 0.95); each cluster draws its own frequency from
// Beta(p(1-F)/F, (1-p)(1-F)/F) around it; cells are Bernoulli draws.
// Cluster sizes are equal, so n_obs must divide by n_clusters.
LabeledDataset simulate_markers(const SimConfig& cfg);

// Bisection on the drift parameter until the mean true gamma over
// `replicates` seeded simulations is within 0.02 of the target (at most 20
// halvings). Throws with the bracketing values when the target is
// unreachable.
double calibrate_separation(double target_true_gamma, size_t k, SimConfig base,
                            double* achieved = nullptr, int replicates = 10);

// Mean true gamma over seeded replicates at a fixed drift.
double mean_true_gamma(const SimConfig& cfg, int replicates);

}  // namespace nclust
