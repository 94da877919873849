#include "core/clustering.hpp"

#include "core/error.hpp"

namespace nclust {

void ClusterAssignment::validate() const {
  if (k == 0) fail(ErrorCategory::domain, "assignment has k = 0");
  std::vector<char> seen(k, 0);
  for (int lab : labels) {
    if (lab < 1 || static_cast<size_t>(lab) > k)
      fail(ErrorCategory::domain, "label " + std::to_string(lab) + " outside 1.." + std::to_string(k));
    seen[static_cast<size_t>(lab) - 1] = 1;
  }
  for (size_t c = 0; c < k; ++c)
    if (!seen[c]) fail(ErrorCategory::domain, "cluster " + std::to_string(c + 1) + " is empty");
}

}  // namespace nclust
