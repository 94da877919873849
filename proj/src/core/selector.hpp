#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/clustering.hpp"
#include "core/gmm.hpp"
#include "core/hclust.hpp"
#include "core/kmeans.hpp"
#include "core/marker_matrix.hpp"
#include "core/permtest.hpp"

namespace nclust {

struct EngineSettings {
  int kmeans_restarts = 10;
  int kmeans_max_iter = 100;
  int gmm_restarts = 10;
  int gmm_max_iter = 200;
  double gmm_tol = 1e-6;
  Linkage linkage = Linkage::complete;
};

struct SelectionConfig {
  size_t k_max = 12;
  size_t n_boot = 50;
  double alpha = 0.01;
  uint64_t master_seed = 0;
  int threads = 1;
  EngineSettings engines;

  void validate() const;
};

// One gamma per (method, k, bootstrap replicate). Cells can be undefined
// (engine failure, degenerate data); the note records why.
struct GammaCell {
  double gamma = 0.0;
  bool defined = false;
  std::string note;
};

class GammaTable {
 public:
  GammaTable() = default;
  GammaTable(size_t k_max, size_t n_boot);

  size_t k_max() const { return k_max_; }
  size_t n_boot() const { return n_boot_; }

  GammaCell& at(Method m, size_t k, size_t rep);
  const GammaCell& at(Method m, size_t k, size_t rep) const;

  // mean over defined replicates; unset if every cell is undefined
  std::optional<double> mean_gamma(Method m, size_t k) const;
  size_t defined_count(Method m, size_t k) const;

 private:
  size_t k_max_ = 0;
  size_t n_boot_ = 0;
  std::vector<GammaCell> cells_;
  size_t index(Method m, size_t k, size_t rep) const;
};

enum class StructureFlag { clustered = 0, no_structure = 1, inconclusive = 2 };
const char* structure_name(StructureFlag f);

enum class CurveShape {
  undefined = 0,       // curve has undefined points
  rising = 1,          // never meaningfully declines
  declining = 2,       // peak at k = 2, material decline after
  interior_peak = 3,   // peak strictly between 2 and k_max, decline after
  flat_high = 4        // never declines but starts high
};
const char* curve_shape_name(CurveShape s);

struct MethodDiagnosis {
  CurveShape shape = CurveShape::undefined;
  size_t peak_k = 0;
  double start = 0.0;
  double peak_value = 0.0;
  StructureFlag verdict = StructureFlag::inconclusive;
};

struct Diagnosis {
  StructureFlag flag = StructureFlag::inconclusive;
  std::array<MethodDiagnosis, kMethodCount> methods;
  size_t consensus_peak = 0;  // 0 when not clustered
};

struct SelectionReport {
  std::optional<size_t> chosen_k;
  std::optional<Method> chosen_method;
  StructureFlag structure = StructureFlag::inconclusive;
  bool boundary_warning = false;
  double winning_mean_gamma = 0.0;

  size_t k_max = 0;
  size_t n_boot = 0;
  double alpha = 0.01;
  uint64_t master_seed = 0;

  // curves[m][k-2] = mean gamma (unset when undefined)
  std::array<std::vector<std::optional<double>>, kMethodCount> mean_gamma;
  std::array<std::vector<size_t>, kMethodCount> defined_counts;
  // p_values[m][k-2] = one-sided p for the (k, k+1) pair
  std::array<std::vector<PValue>, kMethodCount> p_values;
  // per-method candidate k under the significance rule (0 = none)
  std::array<size_t, kMethodCount> candidate_k{0, 0, 0};
  Diagnosis diagnosis;
};

// Runs the full bootstrap x method x k grid: each replicate is resampled,
// its Manhattan distances computed, all three engines run at every k in
// 2..k_max, and each assignment scored with Hubert's gamma against that
// replicate's distances. Deterministic under master_seed for any thread
// count. Engine failures leave the affected cells undefined.
GammaTable run_grid(const MarkerMatrix& m, const SelectionConfig& cfg);

// Curve-shape diagnostic separating "one cluster" from real structure.
// kmeans and hclust vote; mclust only breaks ties.
Diagnosis diagnose_structure(const GammaTable& t);

// Decision rule: per method, the smallest k whose gamma increased
// significantly from k-1 (vacuous at k = 2) and does not increase
// significantly to k+1; the winning method has the highest mean gamma at its
// own candidate. The shape diagnostic gates the no-structure case.
SelectionReport select_k(const GammaTable& t, const SelectionConfig& cfg);

// Deterministic key-value + table rendering of the report.
std::string serialize_report(const SelectionReport& r);

// p-value for the (k, k+1) pair of one method, pairing replicates and
// dropping those where either gamma is undefined.
PValue pair_p_value(const GammaTable& t, Method m, size_t k, uint64_t master_seed);

}  // namespace nclust
