#include "core/harness.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include "core/distances.hpp"
#include "core/error.hpp"
#include "core/gamma.hpp"
#include "core/io.hpp"
#include "core/parallel.hpp"
#include "core/rng.hpp"
#include "core/svg.hpp"

namespace nclust {

namespace {

constexpr uint64_t kValidationSim = 0x76616c73ULL;
constexpr uint64_t kValidationSel = 0x76616c63ULL;
constexpr uint64_t kOverlayStream = 0x6f766572ULL;

struct RunOutcome {
  size_t chosen_k = 0;  // 0 = none
  int method = -1;
  double est_gamma = 0.0;
  bool no_structure = false;
  std::optional<double> true_gamma_value;
};

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream out(p);
  if (!out) fail(ErrorCategory::io, "cannot write " + p.string());
  return out;
}

std::string opt_num(const std::optional<double>& v) {
  if (!v) return "NA";
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6f", *v);
  return buf;
}

}  // namespace

ValidationSummary run_validation(const ValidationConfig& cfg) {
  if (cfg.reps < 1) fail(ErrorCategory::invalid, "validation needs at least 1 repetition");
  if (cfg.k_set.empty() || cfg.presets.empty())
    fail(ErrorCategory::invalid, "validation needs a non-empty k set and preset set");
  cfg.select.validate();

  struct Cell {
    size_t k_true;
    SeparationPreset preset;
  };
  std::vector<Cell> cells;
  for (size_t k : cfg.k_set)
    for (SeparationPreset p : cfg.presets) cells.push_back({k, p});

  const size_t total = cells.size() * cfg.reps;
  std::vector<RunOutcome> outcomes(total);

  parallel_for(total, cfg.threads, [&](size_t t) {
    const size_t cell_idx = t / cfg.reps;
    const size_t rep = t % cfg.reps;
    const Cell& cell = cells[cell_idx];

    SimConfig sim = cfg.sim;
    sim.n_clusters = cell.k_true;
    sim.n_obs = (cfg.sim.n_obs / cell.k_true) * cell.k_true;
    sim.drift = preset_drift(cell.preset);
    sim.missing_rate = 0.0;
    sim.seed = derive_seed(cfg.seed, {kValidationSim, cell_idx, rep});
    LabeledDataset data = simulate_markers(sim);

    RunOutcome& out = outcomes[t];
    GammaValue tg = true_gamma(manhattan_distances(data.markers.cells), data.truth);
    if (tg.defined) out.true_gamma_value = tg.gamma;

    SelectionConfig sel = cfg.select;
    sel.master_seed = derive_seed(cfg.seed, {kValidationSel, cell_idx, rep});
    sel.threads = 1;
    GammaTable table = run_grid(data.markers, sel);
    SelectionReport report = select_k(table, sel);

    if (report.chosen_k) {
      out.chosen_k = *report.chosen_k;
      out.method = static_cast<int>(*report.chosen_method);
      out.est_gamma = report.winning_mean_gamma;
    }
    out.no_structure = report.structure == StructureFlag::no_structure;
  });

  ValidationSummary summary;
  summary.config = cfg;
  for (size_t c = 0; c < cells.size(); ++c) {
    CellSummary s;
    s.k_true = cells[c].k_true;
    s.preset = cells[c].preset;
    s.reps = cfg.reps;
    s.histogram.assign(cfg.select.k_max + 1, 0);

    double est_k_sum = 0.0, est_gamma_sum = 0.0, true_sum = 0.0;
    size_t true_count = 0, correct = 0, no_structure = 0;
    for (size_t rep = 0; rep < cfg.reps; ++rep) {
      const RunOutcome& o = outcomes[c * cfg.reps + rep];
      if (o.chosen_k > 0) {
        ++s.chosen_count;
        est_k_sum += static_cast<double>(o.chosen_k);
        est_gamma_sum += o.est_gamma;
        ++s.method_wins[static_cast<size_t>(o.method)];
        if (o.chosen_k == s.k_true) ++correct;
        ++s.histogram[std::min(o.chosen_k, cfg.select.k_max)];
      } else {
        ++s.histogram[0];
      }
      if (o.no_structure) ++no_structure;
      if (o.true_gamma_value) {
        true_sum += *o.true_gamma_value;
        ++true_count;
      }
    }
    if (s.chosen_count > 0) {
      s.mean_est_k = est_k_sum / static_cast<double>(s.chosen_count);
      s.mean_est_gamma = est_gamma_sum / static_cast<double>(s.chosen_count);
    }
    if (s.k_true >= 2)
      s.prop_correct = static_cast<double>(correct) / static_cast<double>(cfg.reps);
    s.no_structure_rate = static_cast<double>(no_structure) / static_cast<double>(cfg.reps);
    if (true_count > 0) s.mean_true_gamma = true_sum / static_cast<double>(true_count);
    summary.cells.push_back(std::move(s));
  }
  return summary;
}

void write_validation(const ValidationSummary& summary, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  const std::filesystem::path dir(out_dir);

  {
    auto out = open_out(dir / "validation.tsv");
    out << "k_true\tpreset\treps\tmean_est_k\tprop_correct\tno_structure_rate\t"
           "mean_true_gamma\tmean_est_gamma\tshare_kmeans\tshare_hclust\tshare_mclust\n";
    for (const CellSummary& s : summary.cells) {
      out << s.k_true << '\t' << preset_name(s.preset) << '\t' << s.reps << '\t'
          << opt_num(s.mean_est_k) << '\t' << opt_num(s.prop_correct) << '\t'
          << opt_num(std::optional<double>(s.no_structure_rate)) << '\t'
          << opt_num(s.mean_true_gamma) << '\t' << opt_num(s.mean_est_gamma);
      for (size_t m = 0; m < kMethodCount; ++m) {
        std::optional<double> share;
        if (s.chosen_count > 0)
          share = static_cast<double>(s.method_wins[m]) / static_cast<double>(s.chosen_count);
        out << '\t' << opt_num(share);
      }
      out << '\n';
    }
  }

  {
    auto out = open_out(dir / "histograms.tsv");
    out << "k_true\tpreset\tchoice\tcount\n";
    for (const CellSummary& s : summary.cells) {
      out << s.k_true << '\t' << preset_name(s.preset) << "\tNONE\t" << s.histogram[0] << '\n';
      for (size_t k = 2; k < s.histogram.size(); ++k)
        out << s.k_true << '\t' << preset_name(s.preset) << '\t' << k << '\t' << s.histogram[k]
            << '\n';
    }
  }

  for (const CellSummary& s : summary.cells) {
    SvgPlot plot("chosen k, true k=" + std::to_string(s.k_true) + ", preset " +
                     preset_name(s.preset),
                 "chosen number of clusters (0 = none)", "runs");
    double max_count = 1.0;
    for (size_t v : s.histogram) max_count = std::max(max_count, static_cast<double>(v));
    plot.set_x_range(-0.5, static_cast<double>(s.histogram.size()) - 0.5);
    plot.set_y_range(0.0, max_count * 1.1);
    plot.add_bar(0.0, static_cast<double>(s.histogram[0]), 0.8, "#999999");
    for (size_t k = 2; k < s.histogram.size(); ++k)
      plot.add_bar(static_cast<double>(k), static_cast<double>(s.histogram[k]), 0.8,
                   k == s.k_true ? "#d95f02" : "#1b9e77");
    plot.write((dir / ("hist_k" + std::to_string(s.k_true) + "_" + preset_name(s.preset) +
                       ".svg")).string());
  }
}

SensitivityTable bootstrap_sensitivity(const MarkerMatrix& m, const std::vector<size_t>& b_levels,
                                       const SelectionConfig& base) {
  if (b_levels.empty()) fail(ErrorCategory::invalid, "sensitivity needs at least one level");
  SensitivityTable table;
  for (size_t b : b_levels) {
    SelectionConfig cfg = base;
    cfg.n_boot = b;
    GammaTable grid = run_grid(m, cfg);
    SelectionReport report = select_k(grid, cfg);
    SensitivityRow row;
    row.n_boot = b;
    row.chosen_k = report.chosen_k;
    row.method = report.chosen_method;
    if (report.chosen_k) row.gamma = report.winning_mean_gamma;
    row.structure = structure_name(report.structure);
    table.rows.push_back(row);
  }
  const SensitivityRow& last = table.rows.back();
  for (const SensitivityRow& row : table.rows) {
    if (row.chosen_k == last.chosen_k) {
      table.stabilized_at = row.n_boot;
      break;
    }
  }
  return table;
}

void write_sensitivity(const SensitivityTable& t, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  auto out = open_out(std::filesystem::path(out_dir) / "sensitivity.tsv");
  out << "bootstraps\tchosen_k\tmethod\tgamma\tstructure\n";
  for (const SensitivityRow& row : t.rows) {
    out << row.n_boot << '\t' << (row.chosen_k ? std::to_string(*row.chosen_k) : "NONE") << '\t'
        << (row.method ? method_name(*row.method) : "NONE") << '\t' << opt_num(row.gamma) << '\t'
        << row.structure << '\n';
  }
  out << "# stabilized_at = "
      << (t.stabilized_at ? std::to_string(*t.stabilized_at) : "NA") << '\n';
}

void emit_report(const SelectionReport& r, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  const std::filesystem::path dir(out_dir);

  {
    auto out = open_out(dir / "report.txt");
    out << serialize_report(r);
  }
  {
    auto out = open_out(dir / "curves.tsv");
    out << "k\tkmeans\thclust\tmclust\tkmeans_defined\thclust_defined\tmclust_defined\n";
    for (size_t k = 2; k <= r.k_max; ++k) {
      out << k;
      for (size_t m = 0; m < kMethodCount; ++m) out << '\t' << opt_num(r.mean_gamma[m][k - 2]);
      for (size_t m = 0; m < kMethodCount; ++m) out << '\t' << r.defined_counts[m][k - 2];
      out << '\n';
    }
  }
  if (r.k_max >= 3) {
    auto out = open_out(dir / "pvalues.tsv");
    out << "k_low\tk_high\tkmeans\thclust\tmclust\n";
    for (size_t k = 2; k + 1 <= r.k_max; ++k) {
      out << k << '\t' << (k + 1);
      for (size_t m = 0; m < kMethodCount; ++m) {
        const PValue& p = r.p_values[m][k - 2];
        out << '\t' << (p.defined ? opt_num(std::optional<double>(p.p)) : "NA");
      }
      out << '\n';
    }
  }

  auto draw_method = [&](SvgPlot& plot, size_t m, bool label) {
    const char* color = method_color(m);
    // thin baseline across defined points, bold overlays on significant steps
    for (size_t k = 2; k + 1 <= r.k_max; ++k) {
      auto a = r.mean_gamma[m][k - 2];
      auto b = r.mean_gamma[m][k - 1];
      if (!a || !b) continue;
      plot.add_segment(static_cast<double>(k), *a, static_cast<double>(k + 1), *b, color, 1.5);
      const PValue& p = r.p_values[m][k - 2];
      if (p.defined && p.p < r.alpha)
        plot.add_segment(static_cast<double>(k), *a, static_cast<double>(k + 1), *b, color, 4.5);
    }
    std::vector<double> xs, ys;
    for (size_t k = 2; k <= r.k_max; ++k)
      if (auto g = r.mean_gamma[m][k - 2]) {
        xs.push_back(static_cast<double>(k));
        ys.push_back(*g);
      }
    if (!xs.empty())
      plot.add_line(xs, ys, color, 0.0, label ? method_name(static_cast<Method>(m)) : "");
    for (size_t i = 0; i < xs.size(); ++i) plot.add_point(xs[i], ys[i], color, 2.5);
  };

  for (size_t m = 0; m < kMethodCount; ++m) {
    SvgPlot plot(std::string("Hubert's gamma vs k (") + method_name(static_cast<Method>(m)) + ")",
                 "number of clusters", "mean Hubert's gamma");
    plot.set_x_range(2.0, static_cast<double>(r.k_max));
    draw_method(plot, m, false);
    plot.write((dir / (std::string("gamma_") + method_name(static_cast<Method>(m)) + ".svg"))
                   .string());
  }
  SvgPlot combined("Hubert's gamma vs k", "number of clusters", "mean Hubert's gamma");
  combined.set_x_range(2.0, static_cast<double>(r.k_max));
  for (size_t m = 0; m < kMethodCount; ++m) draw_method(combined, m, true);
  combined.write((dir / "gamma_all.svg").string());
}

OverlayResult emit_overlay(double gamma, size_t k, const std::string& out_dir,
                           const SimConfig& base, int sims_per_preset) {
  if (k < 2) fail(ErrorCategory::invalid, "overlay needs a cluster count of at least 2");
  if (sims_per_preset < 2) fail(ErrorCategory::invalid, "overlay needs at least 2 simulations");
  std::filesystem::create_directories(out_dir);

  OverlayResult result;
  for (size_t pi = 0; pi < 3; ++pi) {
    SeparationPreset preset = static_cast<SeparationPreset>(pi);
    OverlayBand band;
    band.preset = preset;
    double lo = 2.0, hi = -2.0, sum = 0.0;
    int count = 0;
    for (int s = 0; s < sims_per_preset; ++s) {
      SimConfig sim = base;
      sim.n_clusters = k;
      sim.n_obs = (base.n_obs / k) * k;
      sim.drift = preset_drift(preset);
      sim.missing_rate = 0.0;
      sim.seed = derive_seed(base.seed, {kOverlayStream, pi, static_cast<uint64_t>(s)});
      LabeledDataset data = simulate_markers(sim);
      GammaValue g = true_gamma(manhattan_distances(data.markers.cells), data.truth);
      if (!g.defined) continue;
      lo = std::min(lo, g.gamma);
      hi = std::max(hi, g.gamma);
      sum += g.gamma;
      ++count;
    }
    if (count == 0) fail(ErrorCategory::domain, "overlay simulations produced no defined gamma");
    band.lo = lo;
    band.hi = hi;
    band.mean = sum / count;
    result.bands[pi] = band;
  }

  double best_dist = std::numeric_limits<double>::infinity();
  double best_center = std::numeric_limits<double>::infinity();
  for (size_t pi = 0; pi < 3; ++pi) {
    const OverlayBand& band = result.bands[pi];
    double d = 0.0;
    if (gamma < band.lo)
      d = band.lo - gamma;
    else if (gamma > band.hi)
      d = gamma - band.hi;
    const double center = std::fabs(gamma - band.mean);
    if (d < best_dist || (d == best_dist && center < best_center)) {
      best_dist = d;
      best_center = center;
      result.nearest = static_cast<SeparationPreset>(pi);
    }
  }
  result.inside = best_dist == 0.0;

  const std::filesystem::path dir(out_dir);
  {
    auto out = open_out(dir / "overlay.tsv");
    out << "preset\tdrift\tgamma_min\tgamma_mean\tgamma_max\n";
    for (const OverlayBand& band : result.bands) {
      out << preset_name(band.preset) << '\t' << format_double(preset_drift(band.preset)) << '\t'
          << opt_num(std::optional<double>(band.lo)) << '\t'
          << opt_num(std::optional<double>(band.mean)) << '\t'
          << opt_num(std::optional<double>(band.hi)) << '\n';
    }
    out << "# point gamma = " << format_double(gamma) << ", k = " << k
        << ", nearest = " << preset_name(result.nearest)
        << (result.inside ? " (inside)" : " (outside)") << '\n';
  }
  {
    SvgPlot plot("true-gamma ranges at k=" + std::to_string(k), "separation preset",
                 "Hubert's gamma");
    plot.set_x_range(-0.5, 2.5);
    double y_lo = std::min(gamma, result.bands[2].lo) - 0.05;
    double y_hi = std::max(gamma, result.bands[0].hi) + 0.05;
    plot.set_y_range(y_lo, y_hi);
    const char* colors[3] = {"#1b9e77", "#d95f02", "#7570b3"};
    for (size_t pi = 0; pi < 3; ++pi)
      plot.add_band(static_cast<double>(pi) - 0.3, static_cast<double>(pi) + 0.3,
                    result.bands[pi].lo, result.bands[pi].hi, colors[pi]);
    plot.add_point(static_cast<double>(static_cast<size_t>(result.nearest)), gamma, "#000000",
                   5.0);
    plot.write((dir / "overlay.svg").string());
  }
  result.files = {(dir / "overlay.tsv").string(), (dir / "overlay.svg").string()};
  return result;
}

}  // namespace nclust
