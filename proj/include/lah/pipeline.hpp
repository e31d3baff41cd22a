#pragma once

#include <atomic>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "lah/clustering.hpp"
#include "lah/config.hpp"
#include "lah/dataset.hpp"
#include "lah/dcorr.hpp"
#include "lah/eval.hpp"
#include "lah/hierarchy.hpp"
#include "lah/label_semantics.hpp"
#include "lah/ldt.hpp"

namespace lah {

/// A trained classifier plus everything needed to reproduce and apply it:
/// the configuration, the training-fold attribute statistics, imputation
/// fills, fuzzy partitions and the trained hierarchy.
struct Model {
  RunConfig cfg;
  std::vector<std::string> attribute_names;
  std::vector<AttributeMeta> attributes;  // kinds, training ranges, value lists
  std::string goal_name;
  std::vector<std::string> class_labels;
  std::vector<double> impute_fill;
  std::vector<Partition> base_partitions;
  Hierarchy hierarchy;

  std::size_t n_attributes() const { return attributes.size(); }
};

namespace detail {

/// Imputation fill per attribute over the given rows: mean for continuous,
/// mode (ties to the lowest code) for discrete.
inline std::vector<double> impute_fills(const Dataset& d,
                                        const std::vector<std::size_t>& rows) {
  std::vector<double> fill(d.n_attributes(), 0.0);
  for (std::size_t a = 0; a < d.n_attributes(); ++a) {
    if (d.attributes[a].kind == AttributeKind::Continuous) {
      double sum = 0.0;
      std::size_t cnt = 0;
      for (std::size_t r : rows) {
        double v = d.rows[r][a];
        if (!std::isnan(v)) { sum += v; ++cnt; }
      }
      if (cnt == 0)
        throw std::runtime_error("attribute " + std::to_string(a) +
                                 " is entirely missing in the training rows");
      fill[a] = sum / static_cast<double>(cnt);
    } else {
      std::vector<std::size_t> counts(d.attributes[a].values.size(), 0);
      std::size_t cnt = 0;
      for (std::size_t r : rows) {
        double v = d.rows[r][a];
        if (!std::isnan(v)) { ++counts[static_cast<std::size_t>(v)]; ++cnt; }
      }
      if (cnt == 0)
        throw std::runtime_error("attribute " + std::to_string(a) +
                                 " is entirely missing in the training rows");
      std::size_t best = 0;
      for (std::size_t v = 1; v < counts.size(); ++v)
        if (counts[v] > counts[best]) best = v;
      fill[a] = static_cast<double>(best);
    }
  }
  return fill;
}

}  // namespace detail

/// Fit the whole pipeline on a row subset: attribute statistics and
/// imputation fills, fuzzy partitions, the correlation profile, attribute
/// clusters, the hierarchy layout, and finally every tree bottom-up.
/// Nothing outside `rows` influences the model.
inline Model fit_model(const Dataset& d, const std::vector<std::size_t>& rows,
                       const RunConfig& cfg, TrainStats* stats = nullptr) {
  if (rows.size() < 2) throw std::invalid_argument("need at least 2 training rows");
  if (cfg.labels < 2) throw std::invalid_argument("need at least 2 labels per attribute");
  if (cfg.preset_k < 1) throw std::invalid_argument("preset cluster count must be positive");
  if (cfg.theta < 0.0) throw std::invalid_argument("same-level threshold must be nonnegative");

  Model m;
  m.cfg = cfg;
  m.attribute_names = d.attribute_names;
  m.goal_name = d.goal_name;
  m.class_labels = d.class_labels;
  m.impute_fill = detail::impute_fills(d, rows);

  const std::size_t na = d.n_attributes();
  m.attributes.reserve(na);
  for (std::size_t a = 0; a < na; ++a)
    m.attributes.push_back(meta_for_rows(d, static_cast<int>(a), rows));
  // A fold whose only observed values were missing-then-filled still needs
  // a usable range.
  for (std::size_t a = 0; a < na; ++a) {
    if (m.attributes[a].kind == AttributeKind::Continuous) {
      m.attributes[a].lo = std::min(m.attributes[a].lo, m.impute_fill[a]);
      m.attributes[a].hi = std::max(m.attributes[a].hi, m.impute_fill[a]);
    }
  }

  m.base_partitions.reserve(na);
  for (std::size_t a = 0; a < na; ++a)
    m.base_partitions.push_back(make_partition(m.attributes[a], cfg.labels));

  // Imputed training columns for the correlation profile.
  std::vector<std::vector<double>> cols(na, std::vector<double>(rows.size()));
  std::vector<int> goal(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    goal[i] = d.goal[rows[i]];
    for (std::size_t a = 0; a < na; ++a) {
      double v = d.rows[rows[i]][a];
      cols[a][i] = std::isnan(v) ? m.impute_fill[a] : v;
    }
  }

  if (cfg.mode == HierarchyMode::Solah) {
    DCorrProfile prof = dcorr_profile(cols, goal, cfg.goal_encoding);
    ClusterResult cr = cluster_attributes(prof.attr, cfg.preset_k);
    m.hierarchy = build_solah(cr, prof.goal, cfg.theta, static_cast<int>(na),
                              m.class_labels, cfg.intermediate);
  } else {
    m.hierarchy = build_flat(static_cast<int>(na), m.class_labels, cfg.intermediate);
  }

  TrainingData base;
  base.partitions = m.base_partitions;
  base.n_classes = static_cast<int>(m.class_labels.size());
  base.goal = goal;
  base.masses.resize(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    base.masses[i].reserve(na);
    for (std::size_t a = 0; a < na; ++a)
      base.masses[i].push_back(mass_vector(m.base_partitions[a], cols[a][i]));
  }

  LDTParams prm;
  prm.purity = cfg.purity;
  prm.fallback = cfg.fallback;
  train_hierarchy(m.hierarchy, base, prm, stats);
  return m;
}

/// Mass vectors of one raw row under the model's partitions. Missing cells
/// take the training-fold fill first.
inline std::vector<MassVector> row_masses(const Model& m, const std::vector<double>& raw) {
  if (raw.size() != m.n_attributes())
    throw std::invalid_argument("expected " + std::to_string(m.n_attributes()) +
                                " attribute values, got " + std::to_string(raw.size()));
  std::vector<MassVector> out;
  out.reserve(raw.size());
  for (std::size_t a = 0; a < raw.size(); ++a) {
    double v = std::isnan(raw[a]) ? m.impute_fill[a] : raw[a];
    out.push_back(mass_vector(m.base_partitions[a], v));
  }
  return out;
}

inline std::vector<double> predict_masses(const Model& m, const std::vector<double>& raw) {
  return infer_hierarchy(m.hierarchy, row_masses(m, raw));
}

/// Map raw CSV cells onto the model's attribute encoding. Discrete cells
/// resolve against the training value lists; unknown values are errors.
inline std::vector<double> encode_cells(const Model& m, const std::vector<std::string>& cells) {
  if (cells.size() != m.n_attributes())
    throw std::invalid_argument("expected " + std::to_string(m.n_attributes()) +
                                " attribute cells, got " + std::to_string(cells.size()));
  std::vector<double> raw(cells.size(), std::numeric_limits<double>::quiet_NaN());
  for (std::size_t a = 0; a < cells.size(); ++a) {
    if (detail::is_missing_cell(cells[a])) continue;
    if (m.attributes[a].kind == AttributeKind::Continuous) {
      double v;
      if (!detail::parse_double(cells[a], v))
        throw std::invalid_argument("non-numeric cell '" + cells[a] + "' for attribute " +
                                    m.attribute_names[a]);
      raw[a] = v;
    } else {
      const auto& vals = m.attributes[a].values;
      auto it = std::find(vals.begin(), vals.end(), cells[a]);
      if (it == vals.end())
        throw std::invalid_argument("unknown value '" + cells[a] + "' for attribute " +
                                    m.attribute_names[a]);
      raw[a] = static_cast<double>(it - vals.begin());
    }
  }
  return raw;
}

struct FoldResult {
  int fold = 0;
  double accuracy = 0.0;
  double auc = std::numeric_limits<double>::quiet_NaN();
  std::size_t branches = 0;  // summed over the fold's slots
  int levels = 0;
  int realized_k = 0;
  double ms = 0.0;
};

struct EvalReport {
  RunConfig cfg;
  std::vector<FoldResult> folds;
  double mean_accuracy = 0.0;
  double mean_auc = std::numeric_limits<double>::quiet_NaN();
  double mean_branches = 0.0;
  int modal_k = 0;
  int modal_levels = 0;
  double total_ms = 0.0;
};

/// Stratified k-fold cross-validation. Each fold refits everything on its
/// training split (partitions, correlations, clusters, hierarchy) and
/// scores the held-out rows, so no information crosses the split. Folds
/// are independent and run on up to cfg.jobs threads; the timing figure is
/// the wall time of the whole loop.
inline EvalReport crossval(const Dataset& d, const RunConfig& cfg,
                           std::ostream* warnings = nullptr) {
  if (cfg.folds < 2) throw std::invalid_argument("fold count must be at least 2");
  FoldPlan plan = stratified_folds(d, cfg.folds, cfg.seed, cfg.stratified, warnings);

  EvalReport rep;
  rep.cfg = cfg;
  rep.folds.resize(cfg.folds);

  auto run_fold = [&](int f) {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<std::size_t> train = train_rows_for_fold(plan, f, d.n_samples());
    Model m = fit_model(d, train, cfg);

    const auto& test = plan.test_indices[f];
    std::vector<std::vector<double>> mass;
    std::vector<int> pred, truth;
    mass.reserve(test.size());
    for (std::size_t r : test) {
      mass.push_back(predict_masses(m, d.rows[r]));
      pred.push_back(argmax_class(mass.back()));
      truth.push_back(d.goal[r]);
    }

    FoldResult fr;
    fr.fold = f;
    fr.accuracy = accuracy(pred, truth);
    fr.auc = macro_auc(mass, truth, d.n_classes());
    fr.branches = m.hierarchy.total_branches();
    fr.levels = m.hierarchy.levels;
    fr.realized_k = static_cast<int>(m.hierarchy.clusters.size());
    fr.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
    rep.folds[f] = fr;
  };

  auto loop0 = std::chrono::steady_clock::now();
  int jobs = std::max(1, std::min(cfg.jobs, cfg.folds));
  if (jobs == 1) {
    for (int f = 0; f < cfg.folds; ++f) run_fold(f);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t)
      pool.emplace_back([&] {
        for (int f = next.fetch_add(1); f < cfg.folds; f = next.fetch_add(1)) run_fold(f);
      });
    for (auto& t : pool) t.join();
  }
  rep.total_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - loop0)
          .count();

  double acc = 0.0, auc = 0.0, br = 0.0;
  int auc_defined = 0;
  std::vector<int> ks, ls;
  for (const auto& f : rep.folds) {
    acc += f.accuracy;
    br += static_cast<double>(f.branches);
    if (!std::isnan(f.auc)) { auc += f.auc; ++auc_defined; }
    ks.push_back(f.realized_k);
    ls.push_back(f.levels);
  }
  rep.mean_accuracy = acc / cfg.folds;
  rep.mean_branches = br / cfg.folds;
  if (auc_defined > 0) rep.mean_auc = auc / auc_defined;
  rep.modal_k = modal_value(ks);
  rep.modal_levels = modal_value(ls);
  return rep;
}

inline std::string format_metric(double v) {
  if (std::isnan(v)) return "n/a";
  std::ostringstream os;
  os << std::fixed << std::setprecision(6) << v;
  return os.str();
}

/// Structured-text report. Timing lines carry real wall-clock values and
/// are the only lines that differ between reruns with the same seed.
inline std::string report_text(const EvalReport& r) {
  std::ostringstream os;
  os << "# cross-validation report\n" << echo_config(r.cfg);
  os << "fold,accuracy,auc,branches,levels,K\n";
  for (const auto& f : r.folds)
    os << f.fold << ',' << format_metric(f.accuracy) << ',' << format_metric(f.auc) << ','
       << f.branches << ',' << f.levels << ',' << f.realized_k << '\n';
  os << "mean_accuracy=" << format_metric(r.mean_accuracy) << '\n'
     << "mean_auc=" << format_metric(r.mean_auc) << '\n'
     << "mean_branches=" << format_metric(r.mean_branches) << '\n'
     << "modal_K=" << r.modal_k << '\n'
     << "modal_levels=" << r.modal_levels << '\n';
  os << "time_ms=" << format_metric(r.total_ms) << '\n';
  for (const auto& f : r.folds) os << "time_ms_fold_" << f.fold << '=' << format_metric(f.ms) << '\n';
  return os.str();
}

inline std::string sweep_csv_header() {
  return "k,realized_K,accuracy,auc,branches,levels,time_ms";
}

inline std::string sweep_csv_row(int preset_k, const EvalReport& r) {
  std::ostringstream os;
  os << preset_k << ',' << r.modal_k << ',' << format_metric(r.mean_accuracy) << ','
     << format_metric(r.mean_auc) << ',' << format_metric(r.mean_branches) << ','
     << r.modal_levels << ',' << format_metric(r.total_ms);
  return os.str();
}

}  // namespace lah
