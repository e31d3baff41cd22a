#pragma once

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lah/dataset.hpp"

namespace lah {

/// Mass over the focal sets of one partition, dense by focal-set id.
using MassVector = std::vector<double>;

/// Set of label ids, kept sorted.
struct FocalSet {
  std::vector<int> labels;

  bool contains(int label) const {
    for (int l : labels)
      if (l == label) return true;
    return false;
  }
};

/// Fuzzy description of one attribute: labels plus their focal sets.
///
/// Continuous attributes use an overlapping chain of 2m-1 focal sets
/// {L1},{L1,L2},{L2},...,{Lm} with one anchor point per focal set, spread
/// evenly over the observed range. A value's mass is split linearly between
/// the two focal sets whose anchors bracket it, so at most two adjacent
/// entries are nonzero and they sum to 1. Values outside the range put all
/// mass on the nearest extreme.
///
/// Discrete attributes get one singleton focal set per observed value and
/// all-or-nothing masses. A constant continuous attribute collapses to a
/// single always-on focal set and is flagged degenerate.
struct Partition {
  AttributeKind kind = AttributeKind::Continuous;
  bool degenerate = false;
  double lo = 0.0;
  double hi = 0.0;
  std::vector<std::string> label_names;
  std::vector<double> anchors;  // continuous only, one per focal set
  std::vector<FocalSet> focal_sets;

  int n_labels() const { return static_cast<int>(label_names.size()); }
  int n_focal() const { return static_cast<int>(focal_sets.size()); }
};

inline std::string focal_name(const Partition& p, int f) {
  std::ostringstream os;
  os << '{';
  const auto& fs = p.focal_sets[f];
  for (std::size_t i = 0; i < fs.labels.size(); ++i) {
    if (i) os << ',';
    os << p.label_names[fs.labels[i]];
  }
  os << '}';
  return os.str();
}

inline Partition make_continuous_partition(double lo, double hi, int n_labels,
                                           std::vector<std::string> names = {}) {
  if (n_labels < 2) throw std::invalid_argument("need at least 2 labels per attribute");
  if (!(lo <= hi)) throw std::invalid_argument("invalid attribute range");

  Partition p;
  p.kind = AttributeKind::Continuous;
  p.lo = lo;
  p.hi = hi;

  if (lo == hi) {
    p.degenerate = true;
    p.label_names = {names.empty() ? std::string("L1") : names.front()};
    p.anchors = {lo};
    p.focal_sets = {FocalSet{{0}}};
    return p;
  }

  if (names.empty())
    for (int i = 0; i < n_labels; ++i) names.push_back("L" + std::to_string(i + 1));
  if (static_cast<int>(names.size()) != n_labels)
    throw std::invalid_argument("label name count does not match label count");
  p.label_names = std::move(names);

  const int n_focal = 2 * n_labels - 1;
  p.anchors.resize(n_focal);
  for (int j = 0; j < n_focal; ++j)
    p.anchors[j] = lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(n_focal - 1);
  p.anchors.back() = hi;  // no rounding drift at the top end

  for (int j = 0; j < n_focal; ++j) {
    if (j % 2 == 0)
      p.focal_sets.push_back(FocalSet{{j / 2}});
    else
      p.focal_sets.push_back(FocalSet{{j / 2, j / 2 + 1}});
  }
  return p;
}

inline Partition make_discrete_partition(const std::vector<std::string>& values) {
  if (values.empty()) throw std::invalid_argument("discrete attribute with no values");
  Partition p;
  p.kind = AttributeKind::Discrete;
  p.label_names = values;
  for (int v = 0; v < static_cast<int>(values.size()); ++v)
    p.focal_sets.push_back(FocalSet{{v}});
  return p;
}

inline Partition make_partition(const AttributeMeta& meta, int n_labels) {
  if (meta.kind == AttributeKind::Discrete) return make_discrete_partition(meta.values);
  return make_continuous_partition(meta.lo, meta.hi, n_labels);
}

/// Mass assignment of a single cell value. Always sums to exactly 1 for
/// continuous partitions (the two nonzero weights are complementary by
/// construction); discrete cells put mass 1 on their value's focal set.
inline MassVector mass_vector(const Partition& p, double x) {
  if (std::isnan(x)) throw std::runtime_error("mass assignment of a missing value");
  MassVector m(p.n_focal(), 0.0);

  if (p.kind == AttributeKind::Discrete) {
    double r = std::round(x);
    if (r != x || r < 0.0 || r >= static_cast<double>(p.n_focal()))
      throw std::runtime_error("unknown discrete value code " + std::to_string(x));
    m[static_cast<std::size_t>(r)] = 1.0;
    return m;
  }

  if (p.degenerate) {
    m[0] = 1.0;
    return m;
  }
  if (x <= p.anchors.front()) {
    m.front() = 1.0;
    return m;
  }
  if (x >= p.anchors.back()) {
    m.back() = 1.0;
    return m;
  }
  // anchors.front() < x < anchors.back(): locate the bracketing pair.
  std::size_t j = 1;
  while (p.anchors[j] < x) ++j;
  double t0 = p.anchors[j - 1], t1 = p.anchors[j];
  double w = (x - t0) / (t1 - t0);
  m[j] = w;
  m[j - 1] = 1.0 - w;  // complementary, so the pair sums to exactly 1
  return m;
}

/// Appropriateness of one label: total mass of focal sets containing it.
inline double appropriateness(const Partition& p, int label, const MassVector& m) {
  double s = 0.0;
  for (int f = 0; f < p.n_focal(); ++f)
    if (p.focal_sets[f].contains(label)) s += m[f];
  return s;
}

inline double appropriateness(const Partition& p, int label, double x) {
  return appropriateness(p, label, mass_vector(p, x));
}

/// The goal variable viewed as a discrete partition over class labels;
/// class-mass distributions of predictors live over these singletons.
inline Partition make_goal_partition(const std::vector<std::string>& class_labels) {
  return make_discrete_partition(class_labels);
}

/// Text dump of a partition: index, anchors and the focal-set chain.
inline std::string partition_text(const Partition& p, int index, const std::string& name) {
  std::ostringstream os;
  os << "attribute " << index << " (" << name << "): "
     << (p.kind == AttributeKind::Continuous ? "continuous" : "discrete");
  if (p.degenerate) os << " degenerate";
  os << '\n';
  if (p.kind == AttributeKind::Continuous) {
    os << "  range [" << p.lo << ", " << p.hi << "]\n  anchors";
    for (double a : p.anchors) os << ' ' << a;
    os << '\n';
  }
  os << "  focal sets";
  for (int f = 0; f < p.n_focal(); ++f) os << ' ' << focal_name(p, f);
  os << '\n';
  return os.str();
}

}  // namespace lah
