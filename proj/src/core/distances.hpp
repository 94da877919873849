#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "core/marker_matrix.hpp"

namespace nclust {

// Upper-triangle pairwise distances in (i, j) lexicographic order, i < j.
struct CondensedDistances {
  size_t n = 0;
  std::vector<double> values;

  static size_t size_for(size_t n) { return n * (n - 1) / 2; }

  size_t index(size_t i, size_t j) const {
    if (i > j) std::swap(i, j);
    return i * (2 * n - i - 1) / 2 + (j - i - 1);
  }

  double at(size_t i, size_t j) const { return i == j ? 0.0 : values[index(i, j)]; }
};

// d(i,j) = sum over columns of |row_i - row_j|. Requires an imputed matrix.
CondensedDistances manhattan_distances(const MarkerMatrix& m);
CondensedDistances manhattan_distances(const Eigen::MatrixXd& rows);

}  // namespace nclust
