#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <vector>

namespace nclust {

// n x p observation-by-marker matrix. Raw cells are 0, 1 or missing (stored
// as NaN); after impute_mean every cell lies in [0, 1] and imputed is true.
struct MarkerMatrix {
  Eigen::MatrixXd cells;
  std::vector<std::string> row_ids;
  std::vector<std::string> marker_names;
  bool imputed = false;

  size_t n_rows() const { return static_cast<size_t>(cells.rows()); }
  size_t n_cols() const { return static_cast<size_t>(cells.cols()); }
  bool is_missing(size_t i, size_t j) const {
    return std::isnan(cells(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
  }
  size_t missing_count() const;

  // Throws Error(domain) when an invariant is broken: fewer than 2 rows,
  // no columns, a cell outside its domain, or an all-missing column.
  void validate() const;
};

// Fills default row ids (r1, r2, ...) and marker names (m1, m2, ...) when the
// label vectors are empty.
void fill_default_labels(MarkerMatrix& m);

// Replaces every missing cell with the mean of the non-missing cells in its
// column. Identity on fully observed input apart from setting imputed.
MarkerMatrix impute_mean(const MarkerMatrix& m);

}  // namespace nclust
