#include "core/distances.hpp"

#include "core/error.hpp"

namespace nclust {

CondensedDistances manhattan_distances(const MarkerMatrix& m) {
  if (!m.imputed)
    fail(ErrorCategory::domain, "manhattan_distances requires an imputed matrix");
  return manhattan_distances(m.cells);
}

CondensedDistances manhattan_distances(const Eigen::MatrixXd& rows) {
  const auto n = static_cast<size_t>(rows.rows());
  CondensedDistances d;
  d.n = n;
  d.values.resize(CondensedDistances::size_for(n));
  size_t idx = 0;
  for (size_t i = 0; i < n; ++i) {
    const auto ri = rows.row(static_cast<Eigen::Index>(i));
    for (size_t j = i + 1; j < n; ++j, ++idx)
      d.values[idx] = (ri - rows.row(static_cast<Eigen::Index>(j))).cwiseAbs().sum();
  }
  return d;
}

}  // namespace nclust
