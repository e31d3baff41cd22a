#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace lah {

inline double accuracy(const std::vector<int>& pred, const std::vector<int>& truth) {
  if (pred.size() != truth.size()) throw std::invalid_argument("prediction/truth length mismatch");
  if (pred.empty()) throw std::invalid_argument("accuracy of an empty set");
  std::size_t ok = 0;
  for (std::size_t i = 0; i < pred.size(); ++i)
    if (pred[i] == truth[i]) ++ok;
  return static_cast<double>(ok) / static_cast<double>(pred.size());
}

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
};

/// Threshold-sweep ROC for positive-class scores against 0/1 truth.
/// Samples with equal scores enter together, so ties form diagonal
/// segments. Points run from (0,0) to (1,1).
inline std::vector<RocPoint> roc_curve(const std::vector<double>& score,
                                       const std::vector<int>& truth) {
  if (score.size() != truth.size()) throw std::invalid_argument("score/truth length mismatch");
  std::size_t pos = 0, neg = 0;
  for (int t : truth) {
    if (t == 1)
      ++pos;
    else if (t == 0)
      ++neg;
    else
      throw std::invalid_argument("truth labels must be 0 or 1");
  }
  if (pos == 0 || neg == 0) throw std::invalid_argument("both classes must be present");

  std::vector<std::size_t> idx(score.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return score[a] > score[b]; });

  std::vector<RocPoint> pts{{0.0, 0.0}};
  std::size_t tp = 0, fp = 0, i = 0;
  while (i < idx.size()) {
    std::size_t j = i;
    while (j < idx.size() && score[idx[j]] == score[idx[i]]) {
      if (truth[idx[j]] == 1)
        ++tp;
      else
        ++fp;
      ++j;
    }
    pts.push_back({static_cast<double>(fp) / neg, static_cast<double>(tp) / pos});
    i = j;
  }
  return pts;
}

inline double auc_trapezoid(const std::vector<RocPoint>& pts) {
  double a = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i)
    a += (pts[i].fpr - pts[i - 1].fpr) * (pts[i].tpr + pts[i - 1].tpr) * 0.5;
  return a;
}

/// Area under the threshold-sweep ROC. NaN when a class is absent (the
/// measure is undefined there and reports print it as n/a).
inline double binary_auc(const std::vector<double>& score, const std::vector<int>& truth) {
  bool has_pos = false, has_neg = false;
  for (int t : truth) (t == 1 ? has_pos : has_neg) = true;
  if (!has_pos || !has_neg) return std::numeric_limits<double>::quiet_NaN();
  return auc_trapezoid(roc_curve(score, truth));
}

/// Multi-class AUC: one-vs-rest per class, macro-averaged over the classes
/// for which it is defined. Coincides with binary_auc for two classes.
inline double macro_auc(const std::vector<std::vector<double>>& mass,
                        const std::vector<int>& truth, int n_classes) {
  double sum = 0.0;
  int defined = 0;
  for (int c = 0; c < n_classes; ++c) {
    std::vector<double> score(mass.size());
    std::vector<int> bin(mass.size());
    for (std::size_t i = 0; i < mass.size(); ++i) {
      score[i] = mass[i][c];
      bin[i] = truth[i] == c ? 1 : 0;
    }
    double a = binary_auc(score, bin);
    if (!std::isnan(a)) {
      sum += a;
      ++defined;
    }
  }
  if (defined == 0) return std::numeric_limits<double>::quiet_NaN();
  return sum / defined;
}

/// Most frequent value; ties resolve to the smallest.
inline int modal_value(const std::vector<int>& v) {
  if (v.empty()) throw std::invalid_argument("mode of an empty set");
  std::map<int, int> freq;
  for (int x : v) ++freq[x];
  int best = v.front(), best_n = 0;
  for (const auto& [val, n] : freq)
    if (n > best_n) {
      best = val;
      best_n = n;
    }
  return best;
}

inline std::string roc_csv(const std::vector<RocPoint>& pts) {
  std::ostringstream os;
  os << "fpr,tpr\n";
  os.precision(17);
  for (const auto& p : pts) os << p.fpr << ',' << p.tpr << '\n';
  return os.str();
}

}  // namespace lah
