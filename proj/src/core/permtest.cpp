#include "core/permtest.hpp"

#include <cmath>

#include "core/rng.hpp"

namespace nclust {

namespace {
constexpr uint64_t kFlipStream = 0x666c6970ULL;
}

PValue paired_signflip_test(const std::vector<double>& diffs, uint64_t seed) {
  const size_t b = diffs.size();
  PValue out;
  if (b < 2) return out;

  double observed = 0.0;
  double scale = 0.0;
  for (double v : diffs) {
    observed += v;
    scale = std::max(scale, std::fabs(v));
  }
  const double tol = 1e-12 * std::max(scale, 1.0);

  size_t at_least = 0;
  size_t total = 0;
  if (b <= kExhaustiveFlipLimit) {
    const uint64_t patterns = uint64_t{1} << b;
    for (uint64_t mask = 0; mask < patterns; ++mask) {
      double sum = 0.0;
      for (size_t i = 0; i < b; ++i) sum += (mask >> i) & 1 ? -diffs[i] : diffs[i];
      if (sum >= observed - tol) ++at_least;
    }
    total = patterns;
  } else {
    Rng rng = Rng::stream(seed, {kFlipStream});
    at_least = 1;  // the observed pattern itself
    for (size_t t = 0; t < kMonteCarloFlips; ++t) {
      double sum = 0.0;
      for (size_t i = 0; i < b; ++i) {
        uint64_t bit = rng.next_u64() >> 63;
        sum += bit ? -diffs[i] : diffs[i];
      }
      if (sum >= observed - tol) ++at_least;
    }
    total = kMonteCarloFlips + 1;
  }
  out.p = static_cast<double>(at_least) / static_cast<double>(total);
  out.defined = true;
  return out;
}

}  // namespace nclust
