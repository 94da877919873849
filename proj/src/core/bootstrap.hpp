#pragma once

#include <cstdint>
#include <vector>

#include "core/marker_matrix.hpp"

namespace nclust {

struct BootstrapSample {
  MarkerMatrix data;
  std::vector<size_t> source_indices;
  int replicate_id = 0;
  uint64_t seed = 0;
};

// Draws n rows uniformly with replacement. The RNG stream is keyed on
// (master_seed, replicate_id), so replicates are reproducible independently
// of each other and of scheduling order.
BootstrapSample bootstrap_rows(const MarkerMatrix& m, int replicate_id, uint64_t master_seed);

}  // namespace nclust
