#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace lah {

/// Attribute grouping produced by threshold peeling. Clusters appear in
/// discovery order with their anchor attribute, peak correlation and the
/// width of the admission band; attributes left with no nonzero ties are
/// appended afterwards as singletons.
struct ClusterResult {
  std::vector<std::vector<int>> clusters;  // member ids, sorted ascending
  std::vector<int> anchor;                 // -1 for leftover singletons
  std::vector<double> peak;                // 0 for leftover singletons
  std::vector<double> alpha;               // 0 for leftover singletons

  int realized_k() const { return static_cast<int>(clusters.size()); }
};

/// Group attributes by mutual distance correlation. Repeatedly takes the
/// strongest remaining tie, forms a cluster around its column from every
/// attribute within (d_max - alpha) of it (alpha spans a 1/k share of the
/// remaining nonzero range, and the band is closed at both ends), then
/// removes the cluster from play. Larger k narrows the band and yields more
/// clusters. The diagonal is ignored; self-similarity never binds.
///
/// Ties for the strongest entry resolve to the lowest column index, then
/// the lowest row index, which keeps the result deterministic.
inline ClusterResult cluster_attributes(const std::vector<std::vector<double>>& m, int k) {
  const std::size_t n = m.size();
  if (n == 0) throw std::invalid_argument("empty correlation matrix");
  if (k < 1) throw std::invalid_argument("cluster granularity k must be positive");
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw std::invalid_argument("correlation matrix is not square");
    for (std::size_t j = 0; j < n; ++j) {
      if (m[i][j] < 0.0)
        throw std::invalid_argument("correlation matrix has a negative entry");
      if (m[i][j] != m[j][i])
        throw std::invalid_argument("correlation matrix is not symmetric at (" +
                                    std::to_string(i) + "," + std::to_string(j) + ")");
    }
  }

  std::vector<std::vector<double>> t = m;
  for (std::size_t i = 0; i < n; ++i) t[i][i] = 0.0;

  ClusterResult out;
  std::vector<bool> assigned(n, false);

  for (;;) {
    // Strongest remaining tie and the nonzero floor, in one sweep.
    double d_max = 0.0, d_min = 0.0;
    std::size_t best_c = 0;
    bool any = false;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) {
        double v = t[i][j];
        if (v <= 0.0) continue;
        if (!any || v < d_min) d_min = v;
        if (!any || v > d_max) {
          d_max = v;
          best_c = j;
        }
        any = true;
      }
    if (!any) break;

    double alpha = (d_max - d_min) / static_cast<double>(k);
    std::vector<int> members{static_cast<int>(best_c)};
    for (std::size_t i = 0; i < n; ++i) {
      if (i == best_c) continue;
      double v = t[i][best_c];
      if (v > 0.0 && v >= d_max - alpha) members.push_back(static_cast<int>(i));
    }
    std::sort(members.begin(), members.end());

    for (int a : members) {
      assigned[a] = true;
      for (std::size_t j = 0; j < n; ++j) {
        t[a][j] = 0.0;
        t[j][a] = 0.0;
      }
    }
    out.clusters.push_back(std::move(members));
    out.anchor.push_back(static_cast<int>(best_c));
    out.peak.push_back(d_max);
    out.alpha.push_back(alpha);
  }

  for (std::size_t i = 0; i < n; ++i)
    if (!assigned[i]) {
      out.clusters.push_back({static_cast<int>(i)});
      out.anchor.push_back(-1);
      out.peak.push_back(0.0);
      out.alpha.push_back(0.0);
    }
  return out;
}

}  // namespace lah
