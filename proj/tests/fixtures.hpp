#pragma once

// Synthetic training-data builders shared by the tree and hierarchy suites.

#include <random>
#include <vector>

#include "lah/label_semantics.hpp"
#include "lah/ldt.hpp"
#include "util.hpp"

namespace fixtures {

// Continuous attributes on [0,1] with uniformly random cells and a goal
// that depends on the first attribute (plus noise), so splits carry real
// information and induced trees are nontrivial.
inline lah::TrainingData random_training(std::mt19937_64& rng, std::size_t n_rows,
                                         int n_attrs, int labels, int n_classes) {
  lah::TrainingData d;
  d.n_classes = n_classes;
  for (int a = 0; a < n_attrs; ++a)
    d.partitions.push_back(lah::make_continuous_partition(0.0, 1.0, labels));
  d.masses.resize(n_rows);
  d.goal.resize(n_rows);
  for (std::size_t i = 0; i < n_rows; ++i) {
    std::vector<double> cell(n_attrs);
    for (int a = 0; a < n_attrs; ++a) cell[a] = testutil::uniform(rng, 0.0, 1.0);
    for (int a = 0; a < n_attrs; ++a)
      d.masses[i].push_back(lah::mass_vector(d.partitions[a], cell[a]));
    int cls = static_cast<int>(cell[0] * n_classes);
    if (cls >= n_classes) cls = n_classes - 1;
    if (rng() % 5 == 0) cls = static_cast<int>(rng() % n_classes);  // label noise
    d.goal[i] = cls;
  }
  return d;
}

// Mass vectors for one random row over the data's partitions.
inline std::vector<lah::MassVector> random_row(std::mt19937_64& rng,
                                               const std::vector<lah::Partition>& parts) {
  std::vector<lah::MassVector> row;
  row.reserve(parts.size());
  for (const auto& p : parts)
    row.push_back(lah::mass_vector(p, testutil::uniform(rng, 0.0, 1.0)));
  return row;
}

// Two attributes, three labels each, two rows of opposite class at every
// anchor pair: every node stays at 50/50, so a purity-1 run must expand
// both attributes everywhere, giving the full 5x5 branch grid.
inline lah::TrainingData full_grid_training() {
  lah::TrainingData d;
  d.n_classes = 2;
  d.partitions = {lah::make_continuous_partition(0.0, 1.0, 3),
                  lah::make_continuous_partition(0.0, 1.0, 3)};
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      for (int cls = 0; cls < 2; ++cls) {
        d.masses.push_back({lah::mass_vector(d.partitions[0], d.partitions[0].anchors[i]),
                            lah::mass_vector(d.partitions[1], d.partitions[1].anchors[j])});
        d.goal.push_back(cls);
      }
  return d;
}

}  // namespace fixtures
