#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace nclust {

enum class Method { kmeans = 0, hclust = 1, mclust = 2 };

constexpr size_t kMethodCount = 3;

inline const char* method_name(Method m) {
  switch (m) {
    case Method::kmeans: return "kmeans";
    case Method::hclust: return "hclust";
    case Method::mclust: return "mclust";
  }
  return "?";
}

// Hard partition into k clusters. Labels run 1..k and every label occurs.
// The objective depends on the method: within-cluster sum of squares for
// kmeans, cut height for hclust, log-likelihood for mclust.
struct ClusterAssignment {
  std::vector<int> labels;
  size_t k = 0;
  Method method = Method::kmeans;
  double objective = 0.0;

  size_t n() const { return labels.size(); }
  void validate() const;
};

}  // namespace nclust
