// AP oracle: for every score threshold the greedy matching is recomputed
// from scratch on the retained predictions, then the monotone envelope is
// taken over the resulting (recall, precision) points.

#pragma once

#include <algorithm>
#include <limits>
#include <numeric>
#include <vector>

#include "srw/metrics.hpp"

namespace srw::oracle {

inline double point_distance(const LabeledPoint& a, const LabeledPoint& b) { return (a.p - b.p).norm(); }

inline double line_distance(const LabeledSegment& a, const LabeledSegment& b) {
  const double same = (a.p1 - b.p1).squaredNorm() + (a.p2 - b.p2).squaredNorm();
  const double swapped = (a.p1 - b.p2).squaredNorm() + (a.p2 - b.p1).squaredNorm();
  return std::min(same, swapped);
}

template <typename T, typename Dist>
int true_positives(const std::vector<const T*>& ranked, const std::vector<T>& gt, double threshold,
                   int label, Dist dist) {
  std::vector<bool> used(gt.size(), false);
  int tp = 0;
  for (const T* p : ranked) {
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t g = 0; g < gt.size(); ++g) {
      if (used[g] || gt[g].label != label || gt[g].view != p->view) continue;
      const double d = dist(*p, gt[g]);
      if (d < best_d) {
        best_d = d;
        best = static_cast<int>(g);
      }
    }
    if (best >= 0 && best_d <= threshold) {
      used[static_cast<std::size_t>(best)] = true;
      ++tp;
    }
  }
  return tp;
}

template <typename T, typename Dist>
double threshold_sweep_ap(const std::vector<T>& preds, const std::vector<T>& gt, double threshold,
                          int label, Dist dist) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    if (preds[i].label == label) idx.push_back(i);
  }
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return preds[a].score > preds[b].score || (preds[a].score == preds[b].score && a < b);
  });
  const int g = static_cast<int>(std::count_if(gt.begin(), gt.end(),
                                                [&](const T& x) { return x.label == label; }));
  if (g == 0) return 0.0;
  std::vector<int> tp(idx.size() + 1, 0);
  std::vector<double> precision(idx.size() + 1, 0.0);
  for (std::size_t k = 1; k <= idx.size(); ++k) {
    std::vector<const T*> top;
    for (std::size_t i = 0; i < k; ++i) top.push_back(&preds[idx[i]]);
    tp[k] = true_positives(top, gt, threshold, label, dist);
    precision[k] = static_cast<double>(tp[k]) / static_cast<double>(k);
  }
  double ap = 0.0;
  for (std::size_t k = 1; k <= idx.size(); ++k) {
    if (tp[k] == tp[k - 1]) continue;
    double env = 0.0;
    for (std::size_t j = k; j <= idx.size(); ++j) env = std::max(env, precision[j]);
    ap += static_cast<double>(tp[k] - tp[k - 1]) / g * env;
  }
  return 100.0 * ap;
}

}  // namespace srw::oracle
