#pragma once

#include <cstdint>
#include <initializer_list>

namespace nclust {

// 64-bit finalizer used both as the generator step and for key derivation.
uint64_t mix64(uint64_t x);

// Hashes (master, path...) into a stream key. Streams derived from distinct
// paths behave independently, so replicate i sees the same values no matter
// which thread runs it or in which order replicates are scheduled.
uint64_t derive_seed(uint64_t master, std::initializer_list<uint64_t> path);

// Counter-based generator: state advances by a fixed odd constant and every
// output is mix64(state). All sampling methods are hand-rolled so results do
// not depend on the standard library implementation.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  static Rng stream(uint64_t master, std::initializer_list<uint64_t> path) {
    return Rng(derive_seed(master, path));
  }

  uint64_t next_u64();
  double uniform01();                    // [0, 1)
  double uniform(double lo, double hi);  // [lo, hi)
  uint64_t below(uint64_t bound);        // [0, bound), rejection sampled
  bool bernoulli(double p);
  double normal();                       // standard normal, polar method
  double gamma(double shape);            // unit scale, Marsaglia-Tsang
  double beta(double a, double b);

 private:
  uint64_t state_;
  double stash_ = 0.0;
  bool has_stash_ = false;
};

}  // namespace nclust
