#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "lah/pipeline.hpp"

namespace lah {

/// Human-readable rule document: one rule per branch, grouped per slot,
/// followed by composition templates that say how lower-slot rules feed
/// upper antecedents. Single-slot models get the bare rule list.
inline std::string export_rules_text(const Model& m) {
  const Hierarchy& h = m.hierarchy;
  const Partition ipart = h.intermediate_partition();
  std::vector<Partition> all = m.base_partitions;
  all.resize(h.n_base + h.slots.size(), ipart);

  std::vector<std::string> names = m.attribute_names;
  for (const auto& s : h.slots) names.push_back("z" + std::to_string(s.id));

  std::ostringstream os;
  os << "# rules\n" << echo_config(m.cfg);
  for (const auto& s : h.slots) {
    os << "slot z" << s.id << " level=" << s.level;
    if (s.is_top) os << " top";
    os << " inputs={";
    for (std::size_t i = 0; i < s.inputs.size(); ++i) {
      if (i) os << ',';
      os << names[s.inputs[i]];
    }
    os << "} branches=" << s.tree.branch_count() << '\n';
    for (std::size_t b = 0; b < s.tree.branches.size(); ++b)
      os << "z" << s.id << '.' << b << ": "
         << describe_branch(s.tree.branches[b], all, names, m.class_labels) << '\n';
  }

  bool any = false;
  for (const auto& s : h.slots) {
    std::vector<int> kids;
    for (int a : s.inputs)
      if (a >= h.n_base) kids.push_back(a);
    if (kids.empty()) continue;
    if (!any) {
      os << "composition templates:\n";
      any = true;
    }
    os << "  (";
    for (std::size_t i = 0; i < kids.size(); ++i) {
      if (i) os << " \u2227 ";
      os << 'z' << kids[i] << ".\u2113";
    }
    os << ") \u2192 z" << s.id << ".m \u2192 F:\u03bd(F|z" << s.id
       << ".m)  # each child rule's masses value its intermediate attribute\n";
  }
  return os.str();
}

}  // namespace lah
