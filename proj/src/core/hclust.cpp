#include "core/hclust.hpp"

#include <limits>

#include "core/error.hpp"

namespace nclust {

namespace {

// Anderberg-style search: a full working linkage matrix plus a per-cluster
// nearest-neighbour cache. For complete and average linkage merged distances
// never drop below the cached row minimum, so caches stay valid until their
// partner merges.
struct Agglomerator {
  size_t n;
  Linkage linkage;
  std::vector<double> link;    // condensed over original leaf ids
  std::vector<char> active;    // cluster alive, indexed by smallest leaf id
  std::vector<size_t> size;    // cluster sizes
  std::vector<size_t> nn;      // nearest active partner
  std::vector<double> nn_dist;

  size_t idx(size_t i, size_t j) const {
    if (i > j) std::swap(i, j);
    return i * (2 * n - i - 1) / 2 + (j - i - 1);
  }

  void refresh_nn(size_t a) {
    double best = std::numeric_limits<double>::infinity();
    size_t who = n;
    for (size_t b = 0; b < n; ++b) {
      if (b == a || !active[b]) continue;
      double d = link[idx(a, b)];
      size_t lo = std::min(a, b), hi = std::max(a, b);
      if (d < best || (d == best && who != n &&
                       (lo < std::min(a, who) ||
                        (lo == std::min(a, who) && hi < std::max(a, who))))) {
        best = d;
        who = b;
      }
    }
    nn[a] = who;
    nn_dist[a] = best;
  }
};

}  // namespace

Dendrogram hclust_complete(const CondensedDistances& d) { return hclust(d, Linkage::complete); }

Dendrogram hclust(const CondensedDistances& d, Linkage linkage) {
  const size_t n = d.n;
  if (n < 2) fail(ErrorCategory::invalid, "hclust needs at least 2 observations");
  if (d.values.size() != CondensedDistances::size_for(n))
    fail(ErrorCategory::invalid, "condensed distance vector has wrong length");

  Agglomerator ag;
  ag.n = n;
  ag.linkage = linkage;
  ag.link = d.values;
  ag.active.assign(n, 1);
  ag.size.assign(n, 1);
  ag.nn.assign(n, n);
  ag.nn_dist.assign(n, 0.0);
  for (size_t a = 0; a < n; ++a) ag.refresh_nn(a);

  Dendrogram t;
  t.n_leaves = n;
  t.merges.reserve(n - 1);

  for (size_t step = 0; step + 1 < n; ++step) {
    // global best pair among caches; ties by lexicographic (left, right)
    size_t best_a = n;
    double best = std::numeric_limits<double>::infinity();
    for (size_t a = 0; a < n; ++a) {
      if (!ag.active[a]) continue;
      double dist = ag.nn_dist[a];
      size_t lo = std::min(a, ag.nn[a]), hi = std::max(a, ag.nn[a]);
      if (best_a == n) {
        best_a = a;
        best = dist;
        continue;
      }
      size_t blo = std::min(best_a, ag.nn[best_a]), bhi = std::max(best_a, ag.nn[best_a]);
      if (dist < best || (dist == best && (lo < blo || (lo == blo && hi < bhi)))) {
        best_a = a;
        best = dist;
      }
    }
    const size_t left = std::min(best_a, ag.nn[best_a]);
    const size_t right = std::max(best_a, ag.nn[best_a]);
    t.merges.push_back({left, right, best});

    // fold `right` into `left`
    for (size_t c = 0; c < n; ++c) {
      if (!ag.active[c] || c == left || c == right) continue;
      double dl = ag.link[ag.idx(left, c)];
      double dr = ag.link[ag.idx(right, c)];
      double merged;
      if (linkage == Linkage::complete) {
        merged = std::max(dl, dr);
      } else {
        merged = (dl * static_cast<double>(ag.size[left]) + dr * static_cast<double>(ag.size[right])) /
                 static_cast<double>(ag.size[left] + ag.size[right]);
      }
      ag.link[ag.idx(left, c)] = merged;
      // a tie with the cached minimum may expose a lexicographically
      // smaller pair through the merged cluster
      if (ag.nn[c] != left && ag.nn[c] != right && merged == ag.nn_dist[c]) {
        size_t lo = std::min(c, left), hi = std::max(c, left);
        size_t clo = std::min(c, ag.nn[c]), chi = std::max(c, ag.nn[c]);
        if (lo < clo || (lo == clo && hi < chi)) ag.nn[c] = left;
      }
    }
    ag.size[left] += ag.size[right];
    ag.active[right] = 0;
    ag.refresh_nn(left);
    for (size_t c = 0; c < n; ++c) {
      if (!ag.active[c] || c == left) continue;
      if (ag.nn[c] == left || ag.nn[c] == right) ag.refresh_nn(c);
    }
  }
  return t;
}

ClusterAssignment cut_tree(const Dendrogram& t, size_t k) {
  const size_t n = t.n_leaves;
  if (k < 1 || k > n)
    fail(ErrorCategory::invalid, "cut_tree: k = " + std::to_string(k) + " outside 1.." +
                                     std::to_string(n));

  // replay the first n-k merges with union-find
  std::vector<size_t> parent(n);
  for (size_t i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (size_t s = 0; s + k < n; ++s) {
    size_t a = find(t.merges[s].left);
    size_t b = find(t.merges[s].right);
    size_t lo = std::min(a, b);
    parent[a] = lo;
    parent[b] = lo;
  }

  ClusterAssignment out;
  out.k = k;
  out.method = Method::hclust;
  out.objective = k < n ? t.merges[n - k - 1].height : 0.0;
  out.labels.assign(n, 0);
  int next = 0;
  std::vector<int> name(n, 0);
  for (size_t i = 0; i < n; ++i) {
    size_t root = find(i);
    if (name[root] == 0) name[root] = ++next;
    out.labels[i] = name[root];
  }
  out.validate();
  return out;
}

}  // namespace nclust
