#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "lah/config.hpp"

namespace lah {

/// Flat row-major square matrix, sized for pairwise sample distances.
struct SquareMatrix {
  std::size_t n = 0;
  std::vector<double> v;

  explicit SquareMatrix(std::size_t n_ = 0) : n(n_), v(n_ * n_, 0.0) {}
  double& at(std::size_t i, std::size_t j) { return v[i * n + j]; }
  double at(std::size_t i, std::size_t j) const { return v[i * n + j]; }
};

inline SquareMatrix abs_distance_matrix(const std::vector<double>& x) {
  SquareMatrix m(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) m.at(i, j) = std::fabs(x[i] - x[j]);
  return m;
}

/// Distances between one-hot class indicators: sqrt(2) when the classes
/// differ, 0 otherwise.
inline SquareMatrix class_distance_matrix(const std::vector<int>& c) {
  const double r2 = std::sqrt(2.0);
  SquareMatrix m(c.size());
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j) m.at(i, j) = c[i] == c[j] ? 0.0 : r2;
  return m;
}

/// In-place double centering: subtract row and column means, add back the
/// grand mean.
inline void double_center(SquareMatrix& m) {
  const std::size_t n = m.n;
  if (n == 0) return;
  std::vector<double> row_mean(n, 0.0), col_mean(n, 0.0);
  double grand = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      row_mean[i] += m.at(i, j);
      col_mean[j] += m.at(i, j);
      grand += m.at(i, j);
    }
  for (auto& r : row_mean) r /= static_cast<double>(n);
  for (auto& c : col_mean) c /= static_cast<double>(n);
  grand /= static_cast<double>(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m.at(i, j) += grand - row_mean[i] - col_mean[j];
}

/// Squared sample distance covariance of two centered matrices, floored at
/// zero against round-off.
inline double dcov_sq_centered(const SquareMatrix& a, const SquareMatrix& b) {
  if (a.n != b.n) throw std::invalid_argument("distance matrices of different size");
  double s = 0.0;
  for (std::size_t k = 0; k < a.v.size(); ++k) s += a.v[k] * b.v[k];
  s /= static_cast<double>(a.n) * static_cast<double>(a.n);
  return s < 0.0 ? 0.0 : s;
}

struct DCorrResult {
  double value = 0.0;
  bool degenerate = false;  // a side had zero distance variance
};

/// Distance correlation from already centered distance matrices.
inline DCorrResult dcorr_centered(const SquareMatrix& a, const SquareMatrix& b) {
  double vx = dcov_sq_centered(a, a);
  double vy = dcov_sq_centered(b, b);
  DCorrResult r;
  if (vx <= 0.0 || vy <= 0.0) {
    r.degenerate = true;
    return r;
  }
  double denom = std::sqrt(vx * vy);
  double val = std::sqrt(dcov_sq_centered(a, b) / denom);
  r.value = val < 0.0 ? 0.0 : (val > 1.0 ? 1.0 : val);
  return r;
}

inline DCorrResult distance_correlation(const std::vector<double>& x,
                                        const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("columns of different length");
  if (x.size() < 2) throw std::invalid_argument("need at least 2 samples");
  SquareMatrix a = abs_distance_matrix(x);
  SquareMatrix b = abs_distance_matrix(y);
  double_center(a);
  double_center(b);
  return dcorr_centered(a, b);
}

/// Attribute-attribute distance correlations plus each attribute's
/// correlation with the goal. Columns must already be imputed. Centered
/// distance matrices are built once per column and reused across pairs.
struct DCorrProfile {
  std::vector<std::vector<double>> attr;  // symmetric, diag = dcorr(x,x)
  std::vector<double> goal;               // per attribute
  std::vector<bool> degenerate;           // per attribute: constant column
};

inline DCorrProfile dcorr_profile(const std::vector<std::vector<double>>& columns,
                                  const std::vector<int>& goal, GoalEncoding encoding) {
  if (columns.empty()) throw std::invalid_argument("need at least one attribute column");
  const std::size_t n = goal.size();
  if (n < 2) throw std::invalid_argument("need at least 2 rows");
  const std::size_t na = columns.size();

  std::vector<SquareMatrix> centered;
  centered.reserve(na);
  for (std::size_t a = 0; a < na; ++a) {
    if (columns[a].size() != n) throw std::invalid_argument("column length mismatch");
    for (double v : columns[a])
      if (std::isnan(v))
        throw std::runtime_error("missing value in attribute " + std::to_string(a) +
                                 "; impute before correlation");
    SquareMatrix m = abs_distance_matrix(columns[a]);
    double_center(m);
    centered.push_back(std::move(m));
  }

  SquareMatrix goal_m(0);
  if (encoding == GoalEncoding::OneHot) {
    goal_m = class_distance_matrix(goal);
  } else {
    std::vector<double> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = static_cast<double>(goal[i]);
    goal_m = abs_distance_matrix(c);
  }
  double_center(goal_m);

  DCorrProfile p;
  p.attr.assign(na, std::vector<double>(na, 0.0));
  p.goal.assign(na, 0.0);
  p.degenerate.assign(na, false);

  for (std::size_t a = 0; a < na; ++a) {
    p.degenerate[a] = dcov_sq_centered(centered[a], centered[a]) <= 0.0;
    for (std::size_t b = a; b < na; ++b) {
      double v = dcorr_centered(centered[a], centered[b]).value;
      p.attr[a][b] = v;
      p.attr[b][a] = v;
    }
    p.goal[a] = dcorr_centered(centered[a], goal_m).value;
  }
  return p;
}

}  // namespace lah
