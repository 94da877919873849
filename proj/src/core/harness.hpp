#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "core/popsim.hpp"
#include "core/selector.hpp"

namespace nclust {

struct ValidationConfig {
  size_t reps = 20;
  std::vector<size_t> k_set = {1, 2, 3, 6};
  std::vector<SeparationPreset> presets = {SeparationPreset::low, SeparationPreset::med,
                                           SeparationPreset::high};
  SimConfig sim;             // n_obs is rounded down per cell to a multiple of k_true
  SelectionConfig select;    // n_boot, k_max, alpha, engine settings
  uint64_t seed = 0;
  int threads = 1;           // parallelism across (cell, rep); inner runs are serial
};

struct CellSummary {
  size_t k_true = 0;
  SeparationPreset preset = SeparationPreset::low;
  size_t reps = 0;
  size_t chosen_count = 0;                    // runs that ended CLUSTERED
  std::optional<double> mean_est_k;           // over chosen runs
  std::optional<double> prop_correct;         // unset for k_true = 1
  double no_structure_rate = 0.0;
  std::optional<double> mean_true_gamma;      // generating-label gamma, full data
  std::optional<double> mean_est_gamma;       // winning mean gamma at the chosen k
  std::array<size_t, kMethodCount> method_wins{0, 0, 0};
  std::vector<size_t> histogram;              // [0] = NONE, [k] = chosen k count
};

struct ValidationSummary {
  std::vector<CellSummary> cells;
  ValidationConfig config;
};

// Simulate -> select -> tally over the k_set x preset factorial.
ValidationSummary run_validation(const ValidationConfig& cfg);
void write_validation(const ValidationSummary& summary, const std::string& out_dir);

struct SensitivityRow {
  size_t n_boot = 0;
  std::optional<size_t> chosen_k;
  std::optional<Method> method;
  std::optional<double> gamma;
  std::string structure;
};

struct SensitivityTable {
  std::vector<SensitivityRow> rows;
  std::optional<size_t> stabilized_at;  // smallest b matching the largest-b choice
};

// Reruns the selector at each bootstrap count under one master seed family,
// so smaller runs share their replicate streams with larger ones.
SensitivityTable bootstrap_sensitivity(const MarkerMatrix& m, const std::vector<size_t>& b_levels,
                                       const SelectionConfig& base);
void write_sensitivity(const SensitivityTable& t, const std::string& out_dir);

// report.txt, curve/p-value tables and gamma-vs-k plots with significant
// steps drawn bold; one plot per method plus a combined one.
void emit_report(const SelectionReport& r, const std::string& out_dir);

struct OverlayBand {
  SeparationPreset preset = SeparationPreset::low;
  double lo = 0.0;
  double hi = 0.0;
  double mean = 0.0;
};

struct OverlayResult {
  std::array<OverlayBand, 3> bands;
  SeparationPreset nearest = SeparationPreset::low;
  bool inside = false;
  std::vector<std::string> files;
};

// Places an empirically determined gamma against simulated true-gamma bands
// for each preset at the same cluster count.
OverlayResult emit_overlay(double gamma, size_t k, const std::string& out_dir,
                           const SimConfig& base, int sims_per_preset = 20);

}  // namespace nclust
