#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lah/config.hpp"
#include "lah/label_semantics.hpp"

namespace lah {

/// One conjunct of a branch: attribute `attr` takes focal set `focal`.
struct BranchTerm {
  int attr = 0;
  int focal = 0;

  bool operator==(const BranchTerm&) const = default;
};

/// A root-to-leaf path with its conditional class masses.
struct Branch {
  std::vector<BranchTerm> terms;
  std::vector<double> class_mass;  // over classes, sums to 1
};

/// Working form of a dataset for tree induction: one partition per
/// attribute and precomputed per-cell mass vectors. Rows of composed
/// attributes (outputs of other trees) carry their class-mass vectors here
/// directly, so the induction code never distinguishes the two.
struct TrainingData {
  std::vector<Partition> partitions;
  std::vector<std::vector<MassVector>> masses;  // [row][attribute]
  std::vector<int> goal;
  int n_classes = 0;

  std::size_t n_rows() const { return masses.size(); }
};

struct LDTParams {
  double purity = 1.0;  // stop expanding once max class probability reaches this
  ZeroMassFallback fallback = ZeroMassFallback::Parent;
};

/// Optional instrumentation filled during induction.
struct TrainStats {
  double min_gain = std::numeric_limits<double>::infinity();  // over all expansions
  std::size_t expansions = 0;
};

/// Linguistic decision tree over fuzzy attribute descriptions.
///
/// The canonical form is the branch list; every query mixes the branch
/// class masses weighted by how appropriate each branch is for the row.
/// Because each attribute's masses sum to 1 and every split is exhaustive,
/// branch appropriateness sums to 1 over the whole tree, and query outputs
/// are normalised with no explicit renormalisation step.
class LDT {
 public:
  int n_classes = 0;
  std::vector<Branch> branches;

  std::size_t branch_count() const { return branches.size(); }

  std::size_t depth() const {
    std::size_t d = 0;
    for (const auto& b : branches) d = std::max(d, b.terms.size());
    return d;
  }

  /// Rebuild the shared-prefix index used by infer(). Validates that the
  /// branch list actually forms a tree with every split complete.
  void build_index(const std::vector<Partition>& partitions) {
    nodes_.clear();
    nodes_.push_back(Node{});
    for (const auto& b : branches) insert(b, partitions);
    check_complete(0, partitions);
  }

  /// Class masses for one row, given its per-attribute mass vectors.
  std::vector<double> infer(const std::vector<MassVector>& row) const {
    if (nodes_.empty()) throw std::logic_error("tree index not built");
    std::vector<double> out(n_classes, 0.0);
    walk(0, 1.0, row, out);
    return out;
  }

 private:
  struct Node {
    int attr = -1;               // -1: leaf
    std::vector<int> child;      // by focal id
    std::vector<double> mass;    // leaf class masses
  };
  std::vector<Node> nodes_;

  void insert(const Branch& b, const std::vector<Partition>& parts) {
    int cur = 0;
    for (const auto& t : b.terms) {
      if (t.attr < 0 || t.attr >= static_cast<int>(parts.size()))
        throw std::runtime_error("branch refers to unknown attribute " + std::to_string(t.attr));
      const int nf = parts[t.attr].n_focal();
      if (t.focal < 0 || t.focal >= nf)
        throw std::runtime_error("branch refers to unknown focal set " + std::to_string(t.focal));
      Node& node = nodes_[cur];
      if (node.attr == -1 && node.child.empty() && node.mass.empty()) {
        node.attr = t.attr;
        node.child.assign(nf, -1);
      } else if (node.attr != t.attr) {
        throw std::runtime_error("branch list does not form a tree: split attribute conflict");
      }
      if (nodes_[cur].child[t.focal] == -1) {
        nodes_[cur].child[t.focal] = static_cast<int>(nodes_.size());
        nodes_.push_back(Node{});
      }
      cur = nodes_[cur].child[t.focal];
    }
    Node& leaf = nodes_[cur];
    if (leaf.attr != -1 || !leaf.mass.empty())
      throw std::runtime_error("branch list does not form a tree: duplicate or prefix branch");
    if (static_cast<int>(b.class_mass.size()) != n_classes)
      throw std::runtime_error("branch class masses have the wrong dimension");
    leaf.mass = b.class_mass;
  }

  void check_complete(int idx, const std::vector<Partition>& parts) const {
    const Node& node = nodes_[idx];
    if (node.attr == -1) {
      if (node.mass.empty())
        throw std::runtime_error("branch list is incomplete: leaf without class masses");
      return;
    }
    for (int f = 0; f < parts[node.attr].n_focal(); ++f) {
      if (node.child[f] == -1)
        throw std::runtime_error("branch list is incomplete: missing focal child");
      check_complete(node.child[f], parts);
    }
  }

  void walk(int idx, double weight, const std::vector<MassVector>& row,
            std::vector<double>& out) const {
    const Node& node = nodes_[idx];
    if (node.attr == -1) {
      for (int c = 0; c < n_classes; ++c) out[c] += weight * node.mass[c];
      return;
    }
    const MassVector& m = row[node.attr];
    for (std::size_t f = 0; f < m.size(); ++f)
      if (m[f] > 0.0) walk(node.child[f], weight * m[f], row, out);
  }
};

inline double entropy_bits(const std::vector<double>& p) {
  double e = 0.0;
  for (double v : p)
    if (v > 0.0) e -= v * std::log2(v);
  return e;
}

inline int argmax_class(const std::vector<double>& mass) {
  int best = 0;
  for (int c = 1; c < static_cast<int>(mass.size()); ++c)
    if (mass[c] > mass[best]) best = c;
  return best;
}

/// Induce a tree over the given attribute ids by iterative information-gain
/// splitting on fuzzy memberships.
///
/// Each node scores candidate attributes by the expected entropy of its
/// focal children under the node's membership weights and splits on the
/// best gain (ties to the lowest attribute id). A node stops when its
/// dominant class probability reaches `purity` or no attributes remain.
/// Splits are exhaustive over focal sets; a child no training mass reaches
/// becomes a leaf that repeats its parent's class distribution (or the
/// uniform one, by configuration).
inline LDT train_ldt(const TrainingData& d, std::vector<int> attrs, const LDTParams& prm,
                     TrainStats* stats = nullptr) {
  if (d.n_rows() == 0) throw std::invalid_argument("cannot train on an empty dataset");
  if (d.n_classes < 2) throw std::invalid_argument("need at least 2 classes");
  if (attrs.empty()) throw std::invalid_argument("no attributes to train on");
  if (!(prm.purity > 0.5 && prm.purity <= 1.0))
    throw std::invalid_argument("purity threshold must lie in (0.5, 1]");
  std::sort(attrs.begin(), attrs.end());
  for (int a : attrs)
    if (a < 0 || a >= static_cast<int>(d.partitions.size()))
      throw std::invalid_argument("attribute id out of range: " + std::to_string(a));

  LDT tree;
  tree.n_classes = d.n_classes;

  using Support = std::vector<std::pair<std::size_t, double>>;  // row, membership

  std::vector<BranchTerm> prefix;
  std::function<void(const Support&, const std::vector<int>&, const std::vector<double>&)>
      expand = [&](const Support& support, const std::vector<int>& avail,
                   const std::vector<double>& parent_dist) {
        double mass = 0.0;
        for (const auto& [i, w] : support) mass += w;

        if (mass <= 0.0) {
          std::vector<double> dist =
              prm.fallback == ZeroMassFallback::Uniform
                  ? std::vector<double>(d.n_classes, 1.0 / d.n_classes)
                  : parent_dist;
          tree.branches.push_back({prefix, std::move(dist)});
          return;
        }

        std::vector<double> p(d.n_classes, 0.0);
        for (const auto& [i, w] : support) p[d.goal[i]] += w;
        for (double& v : p) v /= mass;

        double p_max = *std::max_element(p.begin(), p.end());
        if (p_max >= prm.purity || avail.empty()) {
          tree.branches.push_back({prefix, p});
          return;
        }

        const double e_node = entropy_bits(p);
        int best_attr = -1;
        double best_gain = -1.0;
        for (int a : avail) {
          const int nf = d.partitions[a].n_focal();
          std::vector<double> fm(nf, 0.0);
          std::vector<std::vector<double>> fc(nf, std::vector<double>(d.n_classes, 0.0));
          for (const auto& [i, w] : support) {
            const MassVector& m = d.masses[i][a];
            for (int f = 0; f < nf; ++f)
              if (m[f] > 0.0) {
                fm[f] += w * m[f];
                fc[f][d.goal[i]] += w * m[f];
              }
          }
          double expected = 0.0;
          for (int f = 0; f < nf; ++f) {
            if (fm[f] <= 0.0) continue;
            for (double& v : fc[f]) v /= fm[f];
            expected += (fm[f] / mass) * entropy_bits(fc[f]);
          }
          double gain = e_node - expected;
          if (gain > best_gain) {  // ascending scan, so ties keep the lowest id
            best_gain = gain;
            best_attr = a;
          }
        }
        if (stats) {
          stats->min_gain = std::min(stats->min_gain, best_gain);
          ++stats->expansions;
        }

        const int nf = d.partitions[best_attr].n_focal();
        std::vector<int> rest;
        rest.reserve(avail.size() - 1);
        for (int a : avail)
          if (a != best_attr) rest.push_back(a);

        for (int f = 0; f < nf; ++f) {
          Support child;
          for (const auto& [i, w] : support) {
            double m = d.masses[i][best_attr][f];
            if (m > 0.0) child.emplace_back(i, w * m);
          }
          prefix.push_back({best_attr, f});
          expand(child, rest, p);
          prefix.pop_back();
        }
      };

  Support root;
  root.reserve(d.n_rows());
  for (std::size_t i = 0; i < d.n_rows(); ++i) root.emplace_back(i, 1.0);
  expand(root, attrs, std::vector<double>(d.n_classes, 1.0 / d.n_classes));

  tree.build_index(d.partitions);
  return tree;
}

/// Human-readable rule form of one branch.
inline std::string describe_branch(const Branch& b, const std::vector<Partition>& parts,
                                   const std::vector<std::string>& attr_names,
                                   const std::vector<std::string>& class_labels) {
  std::ostringstream os;
  if (b.terms.empty()) {
    os << "IF ⊤";  // empty antecedent
  } else {
    os << "IF ";
    for (std::size_t t = 0; t < b.terms.size(); ++t) {
      if (t) os << " AND ";
      os << attr_names[b.terms[t].attr] << " is "
         << focal_name(parts[b.terms[t].attr], b.terms[t].focal);
    }
  }
  os << " THEN (";
  for (std::size_t c = 0; c < b.class_mass.size(); ++c) {
    if (c) os << ", ";
    os << class_labels[c] << ": " << b.class_mass[c];
  }
  os << ')';
  return os.str();
}

}  // namespace lah
