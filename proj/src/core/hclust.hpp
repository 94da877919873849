#pragma once

#include <cstddef>
#include <vector>

#include "core/clustering.hpp"
#include "core/distances.hpp"

namespace nclust {

enum class Linkage { complete = 0, average = 1 };

// One agglomeration step. Clusters are identified by the smallest leaf index
// they contain, left < right. Heights are non-decreasing in merge order.
struct Merge {
  size_t left = 0;
  size_t right = 0;
  double height = 0.0;
};

struct Dendrogram {
  size_t n_leaves = 0;
  std::vector<Merge> merges;  // exactly n_leaves - 1
};

// Greedy agglomeration: repeatedly merge the pair of clusters with the
// smallest linkage distance, ties broken by the lexicographically smallest
// (left, right) id pair.
Dendrogram hclust(const CondensedDistances& d, Linkage linkage = Linkage::complete);
Dendrogram hclust_complete(const CondensedDistances& d);

// Keeps the first n-k merges and labels the resulting components 1..k in
// order of first leaf appearance.
ClusterAssignment cut_tree(const Dendrogram& t, size_t k);

}  // namespace nclust
