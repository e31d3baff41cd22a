#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace lah {

enum class AttributeKind { Continuous, Discrete };

/// Per-attribute metadata. For continuous attributes [lo, hi] is the
/// observed range; for discrete attributes `values` lists the observed
/// value strings in first-appearance order (cell codes index into it).
struct AttributeMeta {
  int index = 0;
  AttributeKind kind = AttributeKind::Continuous;
  double lo = 0.0;
  double hi = 0.0;
  std::vector<std::string> values;
};

/// Tabular classification data. Rows store continuous values or discrete
/// value codes as doubles; missing cells are NaN. The goal column holds
/// dense class codes assigned in first-appearance order.
struct Dataset {
  std::string name;
  std::vector<std::string> attribute_names;
  std::string goal_name = "class";
  std::vector<AttributeMeta> attributes;
  std::vector<std::vector<double>> rows;
  std::vector<int> goal;
  std::vector<std::string> class_labels;

  std::size_t n_samples() const { return rows.size(); }
  std::size_t n_attributes() const { return attributes.size(); }
  int n_classes() const { return static_cast<int>(class_labels.size()); }
};

/// Optional overrides for load_csv.
struct Schema {
  std::optional<int> goal_column;                 // default: last column
  std::map<int, AttributeKind> kind_overrides;    // by attribute index
};

struct FoldPlan {
  int fold_count = 0;
  std::uint64_t seed = 0;
  std::vector<std::vector<std::size_t>> test_indices;
};

namespace detail {

inline bool is_missing_cell(const std::string& s) { return s.empty() || s == "?"; }

inline bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  const char* p = s.c_str();
  char* end = nullptr;
  out = std::strtod(p, &end);
  return end == p + s.size();
}

inline std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      cells.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  cells.push_back(trim(cur));
  return cells;
}

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace detail

/// Load a comma-separated file. The header row is auto-detected: a header
/// is assumed iff the first row has a non-numeric cell in a column that is
/// numeric in the remaining rows. "?" and empty cells are missing markers
/// and survive until impute_missing.
inline Dataset load_csv(const std::string& path, const Schema& schema = {}) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);

  std::vector<std::vector<std::string>> raw;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    auto cells = detail::split_csv_line(line);
    if (!raw.empty() && cells.size() != raw.front().size()) {
      throw std::runtime_error(path + ": ragged row at line " + std::to_string(line_no) +
                               " (expected " + std::to_string(raw.front().size()) +
                               " cells, got " + std::to_string(cells.size()) + ")");
    }
    raw.push_back(std::move(cells));
  }
  if (raw.empty()) throw std::runtime_error(path + ": empty file");
  const std::size_t n_cols = raw.front().size();
  if (n_cols < 2) throw std::runtime_error(path + ": need at least one attribute and a goal column");

  // Header iff the first row is non-numeric in some column that is numeric below.
  bool has_header = false;
  for (std::size_t c = 0; c < n_cols && !has_header; ++c) {
    double tmp;
    if (detail::is_missing_cell(raw[0][c]) || detail::parse_double(raw[0][c], tmp)) continue;
    for (std::size_t r = 1; r < raw.size(); ++r) {
      if (!detail::is_missing_cell(raw[r][c]) && detail::parse_double(raw[r][c], tmp)) {
        has_header = true;
        break;
      }
    }
  }

  Dataset d;
  {
    auto base = path.find_last_of("/\\");
    std::string fname = base == std::string::npos ? path : path.substr(base + 1);
    auto dot = fname.find_last_of('.');
    d.name = dot == std::string::npos ? fname : fname.substr(0, dot);
  }

  std::vector<std::string> header;
  if (has_header) {
    header = raw.front();
    raw.erase(raw.begin());
    if (raw.empty()) throw std::runtime_error(path + ": header but no data rows");
  }

  int goal_col = schema.goal_column.value_or(static_cast<int>(n_cols) - 1);
  if (goal_col < 0 || goal_col >= static_cast<int>(n_cols))
    throw std::runtime_error(path + ": goal column out of range");

  std::vector<int> attr_cols;
  for (int c = 0; c < static_cast<int>(n_cols); ++c)
    if (c != goal_col) attr_cols.push_back(c);
  const std::size_t n_attrs = attr_cols.size();

  for (std::size_t a = 0; a < n_attrs; ++a) {
    d.attribute_names.push_back(has_header ? header[attr_cols[a]]
                                           : "x" + std::to_string(a));
  }
  d.goal_name = has_header ? header[goal_col] : "class";

  // Attribute kinds: override, else continuous iff every non-missing cell parses.
  std::vector<AttributeKind> kinds(n_attrs, AttributeKind::Continuous);
  for (std::size_t a = 0; a < n_attrs; ++a) {
    auto it = schema.kind_overrides.find(static_cast<int>(a));
    if (it != schema.kind_overrides.end()) {
      kinds[a] = it->second;
      continue;
    }
    for (const auto& row : raw) {
      const std::string& cell = row[attr_cols[a]];
      double tmp;
      if (!detail::is_missing_cell(cell) && !detail::parse_double(cell, tmp)) {
        kinds[a] = AttributeKind::Discrete;
        break;
      }
    }
  }

  d.attributes.resize(n_attrs);
  std::vector<std::map<std::string, int>> value_codes(n_attrs);
  for (std::size_t a = 0; a < n_attrs; ++a) {
    d.attributes[a].index = static_cast<int>(a);
    d.attributes[a].kind = kinds[a];
  }

  std::map<std::string, int> class_codes;
  d.rows.reserve(raw.size());
  for (std::size_t r = 0; r < raw.size(); ++r) {
    std::vector<double> row(n_attrs, std::numeric_limits<double>::quiet_NaN());
    for (std::size_t a = 0; a < n_attrs; ++a) {
      const std::string& cell = raw[r][attr_cols[a]];
      if (detail::is_missing_cell(cell)) continue;
      if (kinds[a] == AttributeKind::Continuous) {
        double v;
        if (!detail::parse_double(cell, v))
          throw std::runtime_error(path + ": non-numeric cell '" + cell +
                                   "' in continuous attribute " + std::to_string(a));
        row[a] = v;
      } else {
        auto [it, inserted] = value_codes[a].try_emplace(cell, static_cast<int>(value_codes[a].size()));
        if (inserted) d.attributes[a].values.push_back(cell);
        row[a] = static_cast<double>(it->second);
      }
    }
    const std::string& gc = raw[r][goal_col];
    if (detail::is_missing_cell(gc))
      throw std::runtime_error(path + ": missing value in goal column at data row " +
                               std::to_string(r + 1));
    auto [it, inserted] = class_codes.try_emplace(gc, static_cast<int>(class_codes.size()));
    if (inserted) d.class_labels.push_back(gc);
    d.goal.push_back(it->second);
    d.rows.push_back(std::move(row));
  }

  if (d.n_classes() < 2) throw std::runtime_error(path + ": fewer than 2 classes");

  // Observed ranges over non-missing cells.
  for (std::size_t a = 0; a < n_attrs; ++a) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& row : d.rows) {
      if (std::isnan(row[a])) continue;
      lo = std::min(lo, row[a]);
      hi = std::max(hi, row[a]);
    }
    if (std::isinf(lo)) { lo = 0.0; hi = 0.0; }  // all-missing; impute will reject
    d.attributes[a].lo = lo;
    d.attributes[a].hi = hi;
  }
  return d;
}

/// Write the dataset back as CSV (with header). Continuous cells keep full
/// round-trip precision; missing cells become "?".
inline void save_csv(const Dataset& d, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  for (std::size_t a = 0; a < d.n_attributes(); ++a) out << d.attribute_names[a] << ',';
  out << d.goal_name << '\n';
  for (std::size_t r = 0; r < d.n_samples(); ++r) {
    for (std::size_t a = 0; a < d.n_attributes(); ++a) {
      double v = d.rows[r][a];
      if (std::isnan(v))
        out << '?';
      else if (d.attributes[a].kind == AttributeKind::Discrete)
        out << d.attributes[a].values[static_cast<std::size_t>(v)];
      else
        out << detail::format_double(v);
      out << ',';
    }
    out << d.class_labels[d.goal[r]] << '\n';
  }
}

inline bool datasets_equal(const Dataset& a, const Dataset& b) {
  if (a.attribute_names != b.attribute_names || a.goal_name != b.goal_name ||
      a.class_labels != b.class_labels || a.goal != b.goal ||
      a.n_attributes() != b.n_attributes() || a.n_samples() != b.n_samples())
    return false;
  for (std::size_t i = 0; i < a.attributes.size(); ++i) {
    const auto& x = a.attributes[i];
    const auto& y = b.attributes[i];
    if (x.kind != y.kind || x.values != y.values || x.lo != y.lo || x.hi != y.hi) return false;
  }
  for (std::size_t r = 0; r < a.rows.size(); ++r)
    for (std::size_t c = 0; c < a.rows[r].size(); ++c) {
      double u = a.rows[r][c], v = b.rows[r][c];
      if (std::isnan(u) != std::isnan(v)) return false;
      if (!std::isnan(u) && u != v) return false;
    }
  return true;
}

/// Replace missing cells: continuous by the attribute mean, discrete by the
/// attribute mode (ties to the lowest code). Idempotent.
inline Dataset impute_missing(const Dataset& d) {
  Dataset out = d;
  for (std::size_t a = 0; a < d.n_attributes(); ++a) {
    double fill = 0.0;
    bool any_missing = false;
    for (const auto& row : d.rows)
      if (std::isnan(row[a])) { any_missing = true; break; }
    if (!any_missing) continue;

    if (d.attributes[a].kind == AttributeKind::Continuous) {
      double sum = 0.0;
      std::size_t cnt = 0;
      for (const auto& row : d.rows)
        if (!std::isnan(row[a])) { sum += row[a]; ++cnt; }
      if (cnt == 0)
        throw std::runtime_error("attribute " + std::to_string(a) + " is entirely missing");
      fill = sum / static_cast<double>(cnt);
    } else {
      std::vector<std::size_t> counts(d.attributes[a].values.size(), 0);
      std::size_t cnt = 0;
      for (const auto& row : d.rows)
        if (!std::isnan(row[a])) { ++counts[static_cast<std::size_t>(row[a])]; ++cnt; }
      if (cnt == 0)
        throw std::runtime_error("attribute " + std::to_string(a) + " is entirely missing");
      std::size_t best = 0;
      for (std::size_t v = 1; v < counts.size(); ++v)
        if (counts[v] > counts[best]) best = v;
      fill = static_cast<double>(best);
    }
    for (auto& row : out.rows)
      if (std::isnan(row[a])) row[a] = fill;

    if (d.attributes[a].kind == AttributeKind::Continuous) {
      out.attributes[a].lo = std::min(out.attributes[a].lo, fill);
      out.attributes[a].hi = std::max(out.attributes[a].hi, fill);
    }
  }
  return out;
}

/// Recompute an attribute's observed statistics over a row subset (used to
/// fit partitions on training folds only).
inline AttributeMeta meta_for_rows(const Dataset& d, int attr,
                                   const std::vector<std::size_t>& row_idx) {
  AttributeMeta m = d.attributes[attr];
  if (m.kind == AttributeKind::Continuous) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t r : row_idx) {
      double v = d.rows[r][attr];
      if (std::isnan(v)) continue;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    if (std::isinf(lo)) { lo = 0.0; hi = 0.0; }
    m.lo = lo;
    m.hi = hi;
  }
  return m;
}

/// Deterministic stratified k-fold plan. Indices of each class are shuffled
/// with the seeded generator and dealt round-robin, so per-class counts
/// across folds differ by at most one.
inline FoldPlan stratified_folds(const Dataset& d, int folds, std::uint64_t seed,
                                 bool stratified = true, std::ostream* warnings = nullptr) {
  if (folds < 2) throw std::invalid_argument("fold count must be at least 2");
  if (static_cast<std::size_t>(folds) > d.n_samples())
    throw std::invalid_argument("fold count exceeds sample count");

  std::mt19937_64 rng(seed);
  auto shuffle_idx = [&rng](std::vector<std::size_t>& v) {
    // Fisher-Yates with explicit draws keeps the plan identical across
    // standard library implementations.
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(rng() % i);
      std::swap(v[i - 1], v[j]);
    }
  };

  FoldPlan plan;
  plan.fold_count = folds;
  plan.seed = seed;
  plan.test_indices.assign(folds, {});

  if (stratified) {
    std::vector<std::vector<std::size_t>> by_class(d.n_classes());
    for (std::size_t i = 0; i < d.n_samples(); ++i) by_class[d.goal[i]].push_back(i);
    int next_fold = 0;
    for (int c = 0; c < d.n_classes(); ++c) {
      if (warnings && by_class[c].size() < static_cast<std::size_t>(folds))
        *warnings << "warning: class '" << d.class_labels[c] << "' has only "
                  << by_class[c].size() << " samples for " << folds << " folds\n";
      shuffle_idx(by_class[c]);
      for (std::size_t i = 0; i < by_class[c].size(); ++i) {
        plan.test_indices[next_fold].push_back(by_class[c][i]);
        next_fold = (next_fold + 1) % folds;
      }
    }
  } else {
    std::vector<std::size_t> all(d.n_samples());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    shuffle_idx(all);
    for (std::size_t i = 0; i < all.size(); ++i)
      plan.test_indices[i % folds].push_back(all[i]);
  }
  for (auto& f : plan.test_indices) std::sort(f.begin(), f.end());
  return plan;
}

inline std::vector<std::size_t> train_rows_for_fold(const FoldPlan& plan, int fold,
                                                    std::size_t n_samples) {
  std::vector<bool> in_test(n_samples, false);
  for (std::size_t i : plan.test_indices[fold]) in_test[i] = true;
  std::vector<std::size_t> train;
  train.reserve(n_samples - plan.test_indices[fold].size());
  for (std::size_t i = 0; i < n_samples; ++i)
    if (!in_test[i]) train.push_back(i);
  return train;
}

/// Plain-text listing of a fold plan, for reproducibility records.
inline std::string to_text(const FoldPlan& plan) {
  std::ostringstream os;
  os << "folds=" << plan.fold_count << " seed=" << plan.seed << '\n';
  for (int f = 0; f < plan.fold_count; ++f) {
    os << "fold " << f << ':';
    for (std::size_t i : plan.test_indices[f]) os << ' ' << i;
    os << '\n';
  }
  return os.str();
}

}  // namespace lah
