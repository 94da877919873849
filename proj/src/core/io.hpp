#pragma once

#include <string>
#include <vector>

#include "core/clustering.hpp"
#include "core/distances.hpp"
#include "core/marker_matrix.hpp"

namespace nclust {

// Delimited text with a header row of marker names and a leading id column.
// delimiter '\0' means auto-detect (tab wins over comma) on load.
struct TextFormat {
  char delimiter = '\0';
  std::string missing_token = "NA";
};

// Cells may be 0, 1, the missing token, or (for files produced by `impute`)
// decimals in [0,1]. A file with fractional cells is flagged imputed; mixing
// fractional cells with missing ones is a parse error.
MarkerMatrix load_markers(const std::string& path, const TextFormat& fmt = {});
void save_markers(const MarkerMatrix& m, const std::string& path, const TextFormat& fmt = {});

// Three columns: i, j (1-based, i < j) and the distance.
void save_distances(const CondensedDistances& d, const std::string& path, char delimiter = '\t');

// Two columns: row id, label.
void save_labels(const ClusterAssignment& a, const std::vector<std::string>& row_ids,
                 const std::string& path, char delimiter = '\t');
std::vector<int> load_labels(const std::string& path, char delimiter = '\0');

std::string format_double(double v);

}  // namespace nclust
