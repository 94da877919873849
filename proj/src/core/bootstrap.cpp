#include "core/bootstrap.hpp"

#include "core/error.hpp"
#include "core/rng.hpp"

namespace nclust {

namespace {
constexpr uint64_t kBootstrapStream = 0x626f6f74ULL;  // "boot"
}

BootstrapSample bootstrap_rows(const MarkerMatrix& m, int replicate_id, uint64_t master_seed) {
  if (!m.imputed) fail(ErrorCategory::domain, "bootstrap_rows requires an imputed matrix");
  const size_t n = m.n_rows();
  if (n == 0) fail(ErrorCategory::domain, "bootstrap_rows on empty matrix");

  BootstrapSample s;
  s.replicate_id = replicate_id;
  s.seed = derive_seed(master_seed, {kBootstrapStream, static_cast<uint64_t>(replicate_id)});
  Rng rng(s.seed);

  s.source_indices.resize(n);
  for (size_t i = 0; i < n; ++i) s.source_indices[i] = rng.below(n);

  s.data.cells.resize(m.cells.rows(), m.cells.cols());
  s.data.row_ids.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    s.data.cells.row(static_cast<Eigen::Index>(i)) =
        m.cells.row(static_cast<Eigen::Index>(s.source_indices[i]));
    s.data.row_ids.push_back(m.row_ids.empty() ? "r" + std::to_string(s.source_indices[i] + 1)
                                               : m.row_ids[s.source_indices[i]]);
  }
  s.data.marker_names = m.marker_names;
  s.data.imputed = true;
  return s;
}

}  // namespace nclust
