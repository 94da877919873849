#pragma once

#include <cstdint>
#include <vector>

namespace nclust {

struct PValue {
  double p = 1.0;
  bool defined = false;
};

// Exact paired sign-flip test of mean(diffs) > 0. All 2^b sign patterns are
// enumerated when b <= 14; above that 9999 Monte Carlo flips are drawn and the
// observed pattern is included in the null set. diffs must already have
// undefined pairs dropped; fewer than 2 values gives an undefined p.
PValue paired_signflip_test(const std::vector<double>& diffs, uint64_t seed = 0);

constexpr size_t kExhaustiveFlipLimit = 14;
constexpr size_t kMonteCarloFlips = 9999;

}  // namespace nclust
