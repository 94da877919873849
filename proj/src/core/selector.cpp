#include "core/selector.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "core/bootstrap.hpp"
#include "core/error.hpp"
#include "core/gamma.hpp"
#include "core/io.hpp"
#include "core/parallel.hpp"
#include "core/pca.hpp"
#include "core/rng.hpp"

namespace nclust {

namespace {
constexpr uint64_t kKmeansStream = 0x6b6d6e73ULL;
constexpr uint64_t kGmmStream = 0x6d636c74ULL;
constexpr uint64_t kPairStream = 0x70616972ULL;

// curve shape thresholds
constexpr double kLowStartMax = 0.4;    // a rising curve from below this looks unstructured
constexpr double kMinDecline = 0.02;    // material post-peak drop
}  // namespace

void SelectionConfig::validate() const {
  if (k_max < 2) fail(ErrorCategory::invalid, "k_max must be at least 2");
  if (n_boot < 2) fail(ErrorCategory::invalid, "bootstrap count must be at least 2");
  if (!(alpha > 0.0 && alpha < 1.0)) fail(ErrorCategory::invalid, "alpha must lie in (0,1)");
  if (threads < 1) fail(ErrorCategory::invalid, "thread count must be at least 1");
}

GammaTable::GammaTable(size_t k_max, size_t n_boot) : k_max_(k_max), n_boot_(n_boot) {
  cells_.resize(kMethodCount * (k_max - 1) * n_boot);
}

size_t GammaTable::index(Method m, size_t k, size_t rep) const {
  if (k < 2 || k > k_max_ || rep >= n_boot_)
    fail(ErrorCategory::invalid, "gamma table index out of range");
  return (static_cast<size_t>(m) * (k_max_ - 1) + (k - 2)) * n_boot_ + rep;
}

GammaCell& GammaTable::at(Method m, size_t k, size_t rep) { return cells_[index(m, k, rep)]; }
const GammaCell& GammaTable::at(Method m, size_t k, size_t rep) const {
  return cells_[index(m, k, rep)];
}

std::optional<double> GammaTable::mean_gamma(Method m, size_t k) const {
  double sum = 0.0;
  size_t count = 0;
  for (size_t rep = 0; rep < n_boot_; ++rep) {
    const GammaCell& c = at(m, k, rep);
    if (c.defined) {
      sum += c.gamma;
      ++count;
    }
  }
  if (count == 0) return std::nullopt;
  return sum / static_cast<double>(count);
}

size_t GammaTable::defined_count(Method m, size_t k) const {
  size_t count = 0;
  for (size_t rep = 0; rep < n_boot_; ++rep)
    if (at(m, k, rep).defined) ++count;
  return count;
}

const char* structure_name(StructureFlag f) {
  switch (f) {
    case StructureFlag::clustered: return "CLUSTERED";
    case StructureFlag::no_structure: return "NO_STRUCTURE";
    case StructureFlag::inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

const char* curve_shape_name(CurveShape s) {
  switch (s) {
    case CurveShape::undefined: return "undefined";
    case CurveShape::rising: return "rising";
    case CurveShape::declining: return "declining";
    case CurveShape::interior_peak: return "interior_peak";
    case CurveShape::flat_high: return "flat_high";
  }
  return "?";
}

GammaTable run_grid(const MarkerMatrix& m, const SelectionConfig& cfg) {
  cfg.validate();
  if (!m.imputed) fail(ErrorCategory::domain, "run_grid requires an imputed matrix");
  m.validate();

  GammaTable table(cfg.k_max, cfg.n_boot);
  const size_t n = m.n_rows();
  const size_t pc_bound = std::min(n - 1, m.n_cols());

  parallel_for(cfg.n_boot, cfg.threads, [&](size_t rep) {
    BootstrapSample sample = bootstrap_rows(m, static_cast<int>(rep) + 1, cfg.master_seed);
    CondensedDistances dist = manhattan_distances(sample.data.cells);

    // one dendrogram per replicate, cut at every k
    Dendrogram dendro;
    std::string hclust_note;
    try {
      dendro = hclust(dist, cfg.engines.linkage);
    } catch (const Error& e) {
      hclust_note = e.what();
    }

    // one score matrix per replicate, truncated per k
    ScoreMatrix scores;
    std::string pca_note;
    const size_t k_eff = std::min(cfg.k_max, pc_bound);
    try {
      scores = pca_scores(sample.data.cells, k_eff);
    } catch (const Error& e) {
      pca_note = e.what();
    }

    for (size_t k = 2; k <= cfg.k_max; ++k) {
      {
        GammaCell& cell = table.at(Method::kmeans, k, rep);
        try {
          KmeansOptions opts;
          opts.restarts = cfg.engines.kmeans_restarts;
          opts.max_iter = cfg.engines.kmeans_max_iter;
          opts.seed = derive_seed(cfg.master_seed, {kKmeansStream, rep + 1, k});
          ClusterAssignment a = kmeans(sample.data.cells, k, opts);
          GammaValue g = hubert_gamma(dist, a);
          cell.defined = g.defined;
          cell.gamma = g.gamma;
          if (!g.defined) cell.note = "gamma undefined";
        } catch (const Error& e) {
          cell.note = e.what();
        }
      }
      {
        GammaCell& cell = table.at(Method::hclust, k, rep);
        if (!hclust_note.empty()) {
          cell.note = hclust_note;
        } else {
          try {
            ClusterAssignment a = cut_tree(dendro, k);
            GammaValue g = hubert_gamma(dist, a);
            cell.defined = g.defined;
            cell.gamma = g.gamma;
            if (!g.defined) cell.note = "gamma undefined";
          } catch (const Error& e) {
            cell.note = e.what();
          }
        }
      }
      {
        GammaCell& cell = table.at(Method::mclust, k, rep);
        if (!pca_note.empty()) {
          cell.note = pca_note;
        } else if (k > k_eff) {
          cell.note = "k exceeds principal component bound";
        } else {
          try {
            GmmOptions opts;
            opts.restarts = cfg.engines.gmm_restarts;
            opts.max_iter = cfg.engines.gmm_max_iter;
            opts.tol = cfg.engines.gmm_tol;
            opts.seed = derive_seed(cfg.master_seed, {kGmmStream, rep + 1, k});
            auto [fit, a] = gmm_em(scores.head_components(k), k, opts);
            GammaValue g = hubert_gamma(dist, a);
            cell.defined = g.defined;
            cell.gamma = g.gamma;
            if (!g.defined) cell.note = "gamma undefined";
          } catch (const Error& e) {
            cell.note = e.what();
          }
        }
      }
    }
  });
  return table;
}

PValue pair_p_value(const GammaTable& t, Method m, size_t k, uint64_t master_seed) {
  std::vector<double> diffs;
  diffs.reserve(t.n_boot());
  for (size_t rep = 0; rep < t.n_boot(); ++rep) {
    const GammaCell& lo = t.at(m, k, rep);
    const GammaCell& hi = t.at(m, k + 1, rep);
    if (lo.defined && hi.defined) diffs.push_back(hi.gamma - lo.gamma);
  }
  return paired_signflip_test(
      diffs, derive_seed(master_seed, {kPairStream, static_cast<uint64_t>(m), k}));
}

namespace {

MethodDiagnosis classify_curve(const GammaTable& t, Method m) {
  MethodDiagnosis d;
  const size_t k_max = t.k_max();
  std::vector<double> curve;
  for (size_t k = 2; k <= k_max; ++k) {
    auto g = t.mean_gamma(m, k);
    if (!g) {
      d.shape = CurveShape::undefined;
      d.verdict = StructureFlag::inconclusive;
      return d;
    }
    curve.push_back(*g);
  }
  size_t peak = 0;
  for (size_t i = 1; i < curve.size(); ++i)
    if (curve[i] > curve[peak]) peak = i;
  double post_decline = 0.0;
  for (size_t i = peak + 1; i < curve.size(); ++i)
    post_decline = std::max(post_decline, curve[peak] - curve[i]);

  d.peak_k = peak + 2;
  d.start = curve.front();
  d.peak_value = curve[peak];

  if (post_decline < kMinDecline) {
    if (d.start < kLowStartMax) {
      d.shape = CurveShape::rising;
      d.verdict = StructureFlag::no_structure;
    } else {
      d.shape = CurveShape::flat_high;
      d.verdict = StructureFlag::inconclusive;
    }
  } else if (d.peak_k == 2) {
    d.shape = CurveShape::declining;
    d.verdict = StructureFlag::clustered;
  } else {
    d.shape = CurveShape::interior_peak;
    d.verdict = StructureFlag::clustered;
  }
  return d;
}

}  // namespace

Diagnosis diagnose_structure(const GammaTable& t) {
  Diagnosis diag;
  for (size_t m = 0; m < kMethodCount; ++m)
    diag.methods[m] = classify_curve(t, static_cast<Method>(m));

  const MethodDiagnosis& km = diag.methods[static_cast<size_t>(Method::kmeans)];
  const MethodDiagnosis& hc = diag.methods[static_cast<size_t>(Method::hclust)];
  const MethodDiagnosis& mc = diag.methods[static_cast<size_t>(Method::mclust)];

  const bool km_votes = km.shape != CurveShape::undefined;
  const bool hc_votes = hc.shape != CurveShape::undefined;
  if (km_votes && hc_votes) {
    if (km.verdict == hc.verdict) {
      diag.flag = km.verdict;
    } else if (mc.shape != CurveShape::undefined &&
               (mc.verdict == km.verdict || mc.verdict == hc.verdict)) {
      diag.flag = mc.verdict;  // advisory tie-break
    } else {
      diag.flag = StructureFlag::inconclusive;
    }
  } else if (km_votes) {
    diag.flag = km.verdict;
  } else if (hc_votes) {
    diag.flag = hc.verdict;
  } else {
    diag.flag = StructureFlag::inconclusive;
  }

  if (diag.flag == StructureFlag::clustered) {
    // consensus peak: agreeing voters, else the voter with the higher peak
    const bool km_c = km_votes && km.verdict == StructureFlag::clustered;
    const bool hc_c = hc_votes && hc.verdict == StructureFlag::clustered;
    if (km_c && hc_c) {
      if (km.peak_k == hc.peak_k)
        diag.consensus_peak = km.peak_k;
      else
        diag.consensus_peak = km.peak_value >= hc.peak_value ? km.peak_k : hc.peak_k;
    } else if (km_c) {
      diag.consensus_peak = km.peak_k;
    } else if (hc_c) {
      diag.consensus_peak = hc.peak_k;
    } else if (mc.verdict == StructureFlag::clustered) {
      diag.consensus_peak = mc.peak_k;
    }
  }
  return diag;
}

SelectionReport select_k(const GammaTable& t, const SelectionConfig& cfg) {
  SelectionReport r;
  r.k_max = t.k_max();
  r.n_boot = t.n_boot();
  r.alpha = cfg.alpha;
  r.master_seed = cfg.master_seed;

  const size_t k_max = t.k_max();
  const size_t n_curve = k_max - 1;
  const size_t n_pairs = k_max >= 3 ? k_max - 2 : 0;

  for (size_t m = 0; m < kMethodCount; ++m) {
    Method method = static_cast<Method>(m);
    r.mean_gamma[m].resize(n_curve);
    r.defined_counts[m].resize(n_curve);
    for (size_t k = 2; k <= k_max; ++k) {
      r.mean_gamma[m][k - 2] = t.mean_gamma(method, k);
      r.defined_counts[m][k - 2] = t.defined_count(method, k);
    }
    r.p_values[m].resize(n_pairs);
    for (size_t k = 2; k + 1 <= k_max; ++k)
      r.p_values[m][k - 2] = pair_p_value(t, method, k, cfg.master_seed);
  }

  auto significant = [&](size_t m, size_t k) {  // pair (k, k+1)
    if (k < 2 || k + 1 > k_max) return false;
    const PValue& p = r.p_values[m][k - 2];
    return p.defined && p.p < cfg.alpha;
  };

  // per-method candidate: smallest k with a significant step in and no
  // significant step out; the step in is vacuous at k = 2, the step out at
  // k = k_max
  for (size_t m = 0; m < kMethodCount; ++m) {
    for (size_t k = 2; k <= k_max; ++k) {
      const bool step_in = k == 2 || significant(m, k - 1);
      const bool step_out = k < k_max && significant(m, k);
      if (step_in && !step_out) {
        r.candidate_k[m] = k;
        break;
      }
    }
  }

  r.diagnosis = diagnose_structure(t);

  if (r.diagnosis.flag == StructureFlag::no_structure) {
    r.structure = StructureFlag::no_structure;
    return r;
  }

  int best_method = -1;
  double best_gamma = 0.0;
  for (size_t m = 0; m < kMethodCount; ++m) {
    const size_t cand = r.candidate_k[m];
    if (cand == 0) continue;
    auto g = r.mean_gamma[m][cand - 2];
    if (!g) continue;  // a method undefined at its candidate cannot win
    if (best_method < 0 || *g > best_gamma) {
      best_method = static_cast<int>(m);
      best_gamma = *g;
    }
  }

  if (best_method < 0) {
    r.structure = StructureFlag::inconclusive;
    return r;
  }

  r.structure = StructureFlag::clustered;
  r.chosen_method = static_cast<Method>(best_method);
  r.chosen_k = r.candidate_k[static_cast<size_t>(best_method)];
  r.winning_mean_gamma = best_gamma;
  r.boundary_warning = *r.chosen_k == k_max && k_max >= 3 &&
                       significant(static_cast<size_t>(best_method), k_max - 1);
  return r;
}

std::string serialize_report(const SelectionReport& r) {
  std::ostringstream out;
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return std::string(buf);
  };

  out << "# cluster count selection report\n";
  out << "chosen_k = " << (r.chosen_k ? std::to_string(*r.chosen_k) : "NONE") << "\n";
  out << "chosen_method = " << (r.chosen_method ? method_name(*r.chosen_method) : "NONE") << "\n";
  out << "structure = " << structure_name(r.structure) << "\n";
  out << "winning_mean_gamma = " << (r.chosen_k ? num(r.winning_mean_gamma) : "NA") << "\n";
  out << "boundary_warning = " << (r.boundary_warning ? "true" : "false") << "\n";
  out << "k_max = " << r.k_max << "\n";
  out << "bootstraps = " << r.n_boot << "\n";
  out << "alpha = " << num(r.alpha) << "\n";
  out << "seed = " << r.master_seed << "\n";
  out << "consensus_peak = "
      << (r.diagnosis.consensus_peak ? std::to_string(r.diagnosis.consensus_peak) : "NA") << "\n";
  for (size_t m = 0; m < kMethodCount; ++m) {
    const MethodDiagnosis& d = r.diagnosis.methods[m];
    out << "shape_" << method_name(static_cast<Method>(m)) << " = " << curve_shape_name(d.shape)
        << "\n";
    out << "candidate_k_" << method_name(static_cast<Method>(m)) << " = "
        << (r.candidate_k[m] ? std::to_string(r.candidate_k[m]) : "NONE") << "\n";
  }

  out << "\n[mean_gamma]\n";
  out << "k";
  for (size_t m = 0; m < kMethodCount; ++m) out << '\t' << method_name(static_cast<Method>(m));
  out << "\n";
  for (size_t k = 2; k <= r.k_max; ++k) {
    out << k;
    for (size_t m = 0; m < kMethodCount; ++m) {
      auto g = r.mean_gamma[m][k - 2];
      out << '\t' << (g ? num(*g) : "NA");
    }
    out << "\n";
  }

  if (r.k_max >= 3) {
    out << "\n[p_values]\n";
    out << "pair";
    for (size_t m = 0; m < kMethodCount; ++m) out << '\t' << method_name(static_cast<Method>(m));
    out << "\n";
    for (size_t k = 2; k + 1 <= r.k_max; ++k) {
      out << k << ":" << (k + 1);
      for (size_t m = 0; m < kMethodCount; ++m) {
        const PValue& p = r.p_values[m][k - 2];
        out << '\t' << (p.defined ? num(p.p) : "NA");
      }
      out << "\n";
    }
  }

  out << "\n[defined_cells]\n";
  out << "k";
  for (size_t m = 0; m < kMethodCount; ++m) out << '\t' << method_name(static_cast<Method>(m));
  out << "\n";
  for (size_t k = 2; k <= r.k_max; ++k) {
    out << k;
    for (size_t m = 0; m < kMethodCount; ++m) out << '\t' << r.defined_counts[m][k - 2];
    out << "\n";
  }
  return out.str();
}

}  // namespace nclust
