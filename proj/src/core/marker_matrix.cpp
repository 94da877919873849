#include "core/marker_matrix.hpp"

#include "core/error.hpp"

namespace nclust {

size_t MarkerMatrix::missing_count() const {
  size_t count = 0;
  for (Eigen::Index j = 0; j < cells.cols(); ++j)
    for (Eigen::Index i = 0; i < cells.rows(); ++i)
      if (std::isnan(cells(i, j))) ++count;
  return count;
}

void MarkerMatrix::validate() const {
  if (n_rows() < 2) fail(ErrorCategory::domain, "marker matrix needs at least 2 rows");
  if (n_cols() < 1) fail(ErrorCategory::domain, "marker matrix needs at least 1 column");
  if (!row_ids.empty() && row_ids.size() != n_rows())
    fail(ErrorCategory::domain, "row id count does not match row count");
  if (!marker_names.empty() && marker_names.size() != n_cols())
    fail(ErrorCategory::domain, "marker name count does not match column count");
  for (Eigen::Index j = 0; j < cells.cols(); ++j) {
    bool any_present = false;
    for (Eigen::Index i = 0; i < cells.rows(); ++i) {
      double v = cells(i, j);
      if (std::isnan(v)) {
        if (imputed)
          fail(ErrorCategory::domain, "imputed matrix contains a missing cell at row " +
                                          std::to_string(i + 1) + ", column " + std::to_string(j + 1));
        continue;
      }
      any_present = true;
      if (imputed) {
        if (v < 0.0 || v > 1.0)
          fail(ErrorCategory::domain, "cell outside [0,1] at row " + std::to_string(i + 1) +
                                          ", column " + std::to_string(j + 1));
      } else if (v != 0.0 && v != 1.0) {
        fail(ErrorCategory::domain, "raw cell not 0/1/missing at row " + std::to_string(i + 1) +
                                        ", column " + std::to_string(j + 1));
      }
    }
    if (!any_present)
      fail(ErrorCategory::domain, "column " + std::to_string(j + 1) + " is entirely missing");
  }
}

void fill_default_labels(MarkerMatrix& m) {
  if (m.row_ids.empty()) {
    m.row_ids.reserve(m.n_rows());
    for (size_t i = 0; i < m.n_rows(); ++i) m.row_ids.push_back("r" + std::to_string(i + 1));
  }
  if (m.marker_names.empty()) {
    m.marker_names.reserve(m.n_cols());
    for (size_t j = 0; j < m.n_cols(); ++j) m.marker_names.push_back("m" + std::to_string(j + 1));
  }
}

MarkerMatrix impute_mean(const MarkerMatrix& m) {
  MarkerMatrix out = m;
  out.imputed = true;
  for (Eigen::Index j = 0; j < out.cells.cols(); ++j) {
    double sum = 0.0;
    Eigen::Index present = 0;
    for (Eigen::Index i = 0; i < out.cells.rows(); ++i) {
      double v = out.cells(i, j);
      if (!std::isnan(v)) {
        sum += v;
        ++present;
      }
    }
    if (present == 0)
      fail(ErrorCategory::domain,
           "cannot impute column " + std::to_string(j + 1) + ": all cells missing");
    if (present == out.cells.rows()) continue;
    double mean = sum / static_cast<double>(present);
    for (Eigen::Index i = 0; i < out.cells.rows(); ++i)
      if (std::isnan(out.cells(i, j))) out.cells(i, j) = mean;
  }
  return out;
}

}  // namespace nclust
