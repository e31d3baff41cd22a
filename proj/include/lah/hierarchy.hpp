#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lah/clustering.hpp"
#include "lah/config.hpp"
#include "lah/ldt.hpp"

namespace lah {

/// One tree slot of a hierarchy. Inputs mix dataset attribute ids
/// (< n_base) and outputs of lower slots (>= n_base). The slot's own output
/// is intermediate attribute `id`.
struct Slot {
  int id = 0;
  int level = 1;
  bool is_top = false;          // appended to consume leftover outputs
  std::vector<int> inputs;
  std::vector<int> cluster;     // dataset attributes this slot was created for
  LDT tree;
};

/// Hierarchy of tree slots over a fixed set of base attributes. Slots are
/// stored in creation order, which is also a valid evaluation order; the
/// last slot emits the goal distribution.
struct Hierarchy {
  int n_base = 0;
  int n_classes = 0;
  std::vector<std::string> class_labels;
  IntermediateMode intermediate = IntermediateMode::MassVector;
  double theta = 0.0;
  std::vector<std::vector<int>> clusters;  // in consumption order
  std::vector<double> relevance;           // average goal correlation, same order
  std::vector<Slot> slots;
  int levels = 0;

  std::size_t total_branches() const {
    std::size_t b = 0;
    for (const auto& s : slots) b += s.tree.branch_count();
    return b;
  }

  int slot_index(int attr_id) const {
    int idx = attr_id - n_base;
    if (idx < 0 || idx >= static_cast<int>(slots.size()))
      throw std::runtime_error("no slot produces attribute " + std::to_string(attr_id));
    return idx;
  }

  /// Fuzzy description of intermediate attributes: the goal's classes as
  /// singleton focal sets, or (refuzzified) labels on the [0,1] score.
  Partition intermediate_partition() const {
    if (intermediate == IntermediateMode::Refuzzified)
      return make_continuous_partition(0.0, 1.0, n_classes);
    return make_goal_partition(class_labels);
  }

  /// Encode a slot's class-mass output as the value of its intermediate
  /// attribute.
  MassVector encode_intermediate(const Partition& ipart,
                                 const std::vector<double>& out) const {
    if (intermediate == IntermediateMode::Refuzzified)
      return mass_vector(ipart, out[1]);  // positive-class mass
    return out;
  }
};

inline std::string attr_display(const Hierarchy& h, int id,
                                const std::vector<std::string>& base_names) {
  if (id < h.n_base) return base_names[id];
  return "z" + std::to_string(id);
}

/// Structural validation shared by the builder and the model loader.
inline void validate_structure(const Hierarchy& h) {
  if (h.slots.empty()) throw std::runtime_error("hierarchy has no slots");
  if (h.n_base < 1) throw std::runtime_error("hierarchy has no base attributes");
  std::vector<int> base_feeds(h.n_base, 0);
  std::vector<int> slot_feeds(h.slots.size(), 0);
  for (std::size_t s = 0; s < h.slots.size(); ++s) {
    if (h.slots[s].id != h.n_base + static_cast<int>(s))
      throw std::runtime_error("slot ids must be consecutive from the base attribute count");
    if (h.slots[s].inputs.empty()) throw std::runtime_error("slot with no inputs");
    for (int a : h.slots[s].inputs) {
      if (a < 0) throw std::runtime_error("negative attribute id");
      if (a < h.n_base) {
        ++base_feeds[a];
      } else {
        int child = h.slot_index(a);
        if (child >= static_cast<int>(s))
          throw std::runtime_error("slot consumes an output produced at or above it");
        ++slot_feeds[child];
      }
    }
  }
  for (int a = 0; a < h.n_base; ++a)
    if (base_feeds[a] != 1)
      throw std::runtime_error("attribute " + std::to_string(a) + " feeds " +
                               std::to_string(base_feeds[a]) + " slots, expected exactly 1");
  for (std::size_t s = 0; s + 1 < h.slots.size(); ++s)
    if (slot_feeds[s] != 1)
      throw std::runtime_error("intermediate attribute " + std::to_string(h.slots[s].id) +
                               " feeds " + std::to_string(slot_feeds[s]) +
                               " slots, expected exactly 1");
  if (slot_feeds.back() != 0)
    throw std::runtime_error("output slot must not feed another slot");
  if (h.intermediate == IntermediateMode::Refuzzified && h.n_classes != 2)
    throw std::runtime_error("refuzzified intermediates require a binary goal");
}

/// Self-organise a hierarchy from attribute clusters.
///
/// Clusters are taken in ascending order of their average correlation with
/// the goal. A running level anchor decides placement: a cluster whose
/// average is within theta of the anchor adds a slot beside the current
/// level and queues its output; a larger gap opens a new level whose slot
/// consumes everything queued so far along with its own cluster. If the
/// walk ends with several outputs still queued, one top slot is appended
/// over them. Less goal-relevant clusters therefore enter lower, and their
/// summaries percolate upward.
inline Hierarchy build_solah(const ClusterResult& cr, const std::vector<double>& goal_corr,
                             double theta, int n_base, std::vector<std::string> class_labels,
                             IntermediateMode imode = IntermediateMode::MassVector) {
  if (cr.clusters.empty()) throw std::invalid_argument("empty cluster set");
  if (theta < 0.0) throw std::invalid_argument("same-level threshold must be nonnegative");

  const std::size_t K = cr.clusters.size();
  std::vector<double> rel(K);
  for (std::size_t c = 0; c < K; ++c) {
    if (cr.clusters[c].empty()) throw std::invalid_argument("empty cluster");
    double s = 0.0;
    for (int a : cr.clusters[c]) s += goal_corr.at(a);
    rel[c] = s / static_cast<double>(cr.clusters[c].size());
  }

  std::vector<std::size_t> order(K);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (rel[a] != rel[b]) return rel[a] < rel[b];
    return cr.clusters[a].front() < cr.clusters[b].front();  // deterministic ties
  });

  Hierarchy h;
  h.n_base = n_base;
  h.n_classes = static_cast<int>(class_labels.size());
  h.class_labels = std::move(class_labels);
  h.intermediate = imode;
  h.theta = theta;

  int next_id = n_base;
  std::vector<int> queued;
  double anchor = 0.0;
  int level = 0;

  for (std::size_t c : order) {
    h.clusters.push_back(cr.clusters[c]);
    h.relevance.push_back(rel[c]);

    Slot s;
    s.id = next_id++;
    s.cluster = cr.clusters[c];
    if (level == 0 || rel[c] - anchor >= theta) {
      ++level;
      anchor = rel[c];
      s.inputs = queued;  // everything pending feeds the level opener
      s.inputs.insert(s.inputs.end(), cr.clusters[c].begin(), cr.clusters[c].end());
      queued.clear();
    } else {
      s.inputs = cr.clusters[c];
    }
    s.level = level;
    queued.push_back(s.id);
    h.slots.push_back(std::move(s));
  }

  if (queued.size() > 1) {
    Slot top;
    top.id = next_id;
    top.is_top = true;
    top.inputs = queued;
    top.level = ++level;
    h.slots.push_back(std::move(top));
  }
  h.levels = level;
  validate_structure(h);
  return h;
}

/// Degenerate hierarchy: one slot over every base attribute.
inline Hierarchy build_flat(int n_base, std::vector<std::string> class_labels,
                            IntermediateMode imode = IntermediateMode::MassVector) {
  Hierarchy h;
  h.n_base = n_base;
  h.n_classes = static_cast<int>(class_labels.size());
  h.class_labels = std::move(class_labels);
  h.intermediate = imode;
  Slot s;
  s.id = n_base;
  s.level = 1;
  for (int a = 0; a < n_base; ++a) s.inputs.push_back(a);
  s.cluster = s.inputs;
  h.clusters.push_back(s.cluster);
  h.relevance.push_back(0.0);
  h.slots.push_back(std::move(s));
  h.levels = 1;
  validate_structure(h);
  return h;
}

/// Train every slot bottom-up. Children are trained before their consumer
/// (explicit postorder with a visited mark; a cycle in a hand-edited model
/// is an error, not a hang). After a slot trains, its outputs on the
/// training rows join the working data as its intermediate attribute, so
/// parents see exactly what they will see at query time.
inline void train_hierarchy(Hierarchy& h, const TrainingData& base, const LDTParams& prm,
                            TrainStats* stats = nullptr) {
  if (static_cast<int>(base.partitions.size()) != h.n_base)
    throw std::invalid_argument("training data does not match hierarchy base width");
  if (base.n_classes != h.n_classes)
    throw std::invalid_argument("training data class count does not match hierarchy");

  const Partition ipart = h.intermediate_partition();
  TrainingData work = base;
  work.partitions.resize(h.n_base + h.slots.size(), ipart);
  for (auto& row : work.masses) row.resize(work.partitions.size());

  enum { Unvisited, InProgress, Done };
  std::vector<int> state(h.slots.size(), Unvisited);

  std::function<void(int)> visit = [&](int s) {
    if (state[s] == Done) return;
    if (state[s] == InProgress) throw std::runtime_error("hierarchy contains a cycle");
    state[s] = InProgress;
    for (int a : h.slots[s].inputs)
      if (a >= h.n_base) visit(h.slot_index(a));

    h.slots[s].tree = train_ldt(work, h.slots[s].inputs, prm, stats);
    const int col = h.slots[s].id;
    for (std::size_t i = 0; i < work.n_rows(); ++i)
      work.masses[i][col] = h.encode_intermediate(ipart, h.slots[s].tree.infer(work.masses[i]));
    state[s] = Done;
  };
  visit(static_cast<int>(h.slots.size()) - 1);

  for (std::size_t s = 0; s < h.slots.size(); ++s)
    if (state[s] != Done)
      throw std::runtime_error("slot " + std::to_string(h.slots[s].id) +
                               " is not reachable from the output slot");
}

/// Goal class masses for one row given its base-attribute mass vectors.
inline std::vector<double> infer_hierarchy(const Hierarchy& h,
                                           const std::vector<MassVector>& base_row) {
  if (static_cast<int>(base_row.size()) != h.n_base)
    throw std::invalid_argument("row does not match hierarchy base width");
  const Partition ipart = h.intermediate_partition();
  std::vector<MassVector> row = base_row;
  row.resize(h.n_base + h.slots.size());
  std::vector<double> out;
  for (const auto& s : h.slots) {  // creation order respects dependencies
    out = s.tree.infer(row);
    row[s.id] = h.encode_intermediate(ipart, out);
  }
  return out;  // the last slot's raw class masses
}

/// Slot wiring as text: one `z <- {inputs}` line per slot.
inline std::string hierarchy_text(const Hierarchy& h,
                                  const std::vector<std::string>& base_names) {
  std::ostringstream os;
  os << "clusters (ascending goal relevance):\n";
  for (std::size_t c = 0; c < h.clusters.size(); ++c) {
    os << "  S" << (c + 1) << " = {";
    for (std::size_t i = 0; i < h.clusters[c].size(); ++i) {
      if (i) os << ',';
      os << attr_display(h, h.clusters[c][i], base_names);
    }
    os << "} relevance=" << h.relevance[c] << '\n';
  }
  os << "slots:\n";
  for (const auto& s : h.slots) {
    os << "  z" << s.id << " <- {";
    for (std::size_t i = 0; i < s.inputs.size(); ++i) {
      if (i) os << ',';
      os << attr_display(h, s.inputs[i], base_names);
    }
    os << "} level=" << s.level;
    if (s.is_top) os << " top";
    if (s.tree.branch_count() > 0) os << " branches=" << s.tree.branch_count();
    os << '\n';
  }
  os << "levels=" << h.levels << '\n';
  return os.str();
}

}  // namespace lah
