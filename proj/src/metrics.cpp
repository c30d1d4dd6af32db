// Copyright 2026 The SRW Toolkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "srw/metrics.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include "srw/error.hpp"

namespace srw {

double segment_delta(const Vec2& p1, const Vec2& p2, const Vec2& q1, const Vec2& q2) {
  const double same = (p1 - q1).squaredNorm() + (p2 - q2).squaredNorm();
  const double swapped = (p1 - q2).squaredNorm() + (p2 - q1).squaredNorm();
  return std::min(same, swapped);
}

namespace {

// a outranks b: higher score, or equal score and earlier index.
bool outranks(double sa, std::size_t ia, double sb, std::size_t ib) {
  return sa > sb || (sa == sb && ia < ib);
}

// Sweep order: score descending, input index ascending.
template <typename T>
std::vector<std::size_t> sweep_order(std::span<const T> items) {
  std::vector<std::size_t> order(items.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return items[a].score > items[b].score; });
  return order;
}

template <typename T, typename Dist>
ApResult greedy_sweep(std::span<const T> predictions, std::span<const T> gt, double threshold,
                      int label, Dist dist) {
  std::map<int, std::vector<std::size_t>> pool;  // view -> unmatched gt indices
  int gt_count = 0;
  for (std::size_t i = 0; i < gt.size(); ++i) {
    if (gt[i].label != label) continue;
    pool[gt[i].view].push_back(i);
    ++gt_count;
  }
  std::vector<ScoredMatch> matches;
  for (std::size_t i : sweep_order(predictions)) {
    const T& p = predictions[i];
    if (p.label != label) continue;
    bool tp = false;
    auto it = pool.find(p.view);
    if (it != pool.end() && !it->second.empty()) {
      auto& candidates = it->second;
      std::size_t best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < candidates.size(); ++k) {
        const double d = dist(p, gt[candidates[k]]);
        if (d < best_d) {
          best_d = d;
          best = k;
        }
      }
      if (best_d <= threshold) {
        tp = true;
        candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(best));
      }
    }
    matches.push_back({p.score, tp});
  }
  return average_precision(matches, gt_count);
}

}  // namespace

std::vector<std::size_t> line_nms(std::span<const LabeledSegment> segments, double gamma) {
  const double limit = gamma * gamma;
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const auto& s = segments[i];
    bool removed = false;
    for (std::size_t j = 0; j < segments.size() && !removed; ++j) {
      const auto& o = segments[j];
      if (j == i || o.view != s.view || o.label != s.label) continue;
      if (!outranks(o.score, j, s.score, i)) continue;
      removed = segment_delta(s.p1, s.p2, o.p1, o.p2) < limit;
    }
    if (!removed) kept.push_back(i);
  }
  return kept;
}

ApResult average_precision(std::span<const ScoredMatch> matches, int gt_count) {
  ApResult r;
  r.gt = gt_count;
  r.predictions = static_cast<int>(matches.size());
  const auto order = sweep_order(matches);
  std::vector<double> precision;
  std::vector<bool> hit;
  for (std::size_t i : order) {
    if (matches[i].true_positive) {
      ++r.tp;
    } else {
      ++r.fp;
    }
    const double p = static_cast<double>(r.tp) / (r.tp + r.fp);
    const double rec = gt_count > 0 ? static_cast<double>(r.tp) / gt_count : 0.0;
    r.pr.push_back({matches[i].score, rec, p});
    precision.push_back(p);
    hit.push_back(matches[i].true_positive);
  }
  if (gt_count <= 0) {
    r.zero_gt = true;
    return r;
  }
  double envelope = 0.0;
  double area = 0.0;
  for (std::size_t k = precision.size(); k-- > 0;) {
    envelope = std::max(envelope, precision[k]);
    if (hit[k]) area += envelope;
  }
  r.ap = 100.0 * area / gt_count;
  return r;
}

ApResult sap(std::span<const LabeledSegment> predictions, std::span<const LabeledSegment> gt,
             double beta, int label) {
  return greedy_sweep(predictions, gt, beta, label,
                      [](const LabeledSegment& a, const LabeledSegment& b) {
                        return segment_delta(a.p1, a.p2, b.p1, b.p2);
                      });
}

ApResult jap(std::span<const LabeledPoint> predictions, std::span<const LabeledPoint> gt,
             double theta, int label) {
  return greedy_sweep(predictions, gt, theta, label,
                      [](const LabeledPoint& a, const LabeledPoint& b) { return (a.p - b.p).norm(); });
}

Aggregate aggregate(const std::vector<std::vector<double>>& ap) {
  Aggregate out;
  if (ap.empty()) return out;
  const std::size_t nt = ap.front().size();
  out.mean_per_threshold.assign(nt, 0.0);
  for (const auto& row : ap) {
    if (row.size() != nt) throw Error("ragged AP table");
    double sum = 0.0;
    for (std::size_t t = 0; t < nt; ++t) {
      out.mean_per_threshold[t] += row[t] / static_cast<double>(ap.size());
      sum += row[t];
    }
    out.mean_per_label.push_back(nt > 0 ? sum / static_cast<double>(nt) : 0.0);
  }
  out.mean = std::accumulate(out.mean_per_label.begin(), out.mean_per_label.end(), 0.0) /
             static_cast<double>(out.mean_per_label.size());
  return out;
}

EvalOptions EvalOptions::from(const Thresholds& t) {
  EvalOptions o;
  o.gamma = t.nms_gamma;
  o.tau = t.match_tau;
  o.betas = t.sap_betas;
  o.thetas = t.jap_thetas;
  o.resolution = t.eval_resolution;
  return o;
}

namespace {

template <std::size_t N, typename Label, std::size_t M>
std::pair<int, double> argmax(const std::array<double, N>& scores,
                              const std::array<Label, M>& candidates) {
  int best = index_of(candidates[0]);
  for (const auto label : candidates) {
    if (scores[static_cast<std::size_t>(index_of(label))] > scores[static_cast<std::size_t>(best)]) {
      best = index_of(label);
    }
  }
  return {best, scores[static_cast<std::size_t>(best)]};
}

void add_segment(EvalItems& items, int view, const Vec2& a, const Vec2& b,
                 const LineScores& scores, bool semantic) {
  if (semantic) {
    const auto [label, score] = argmax(scores, kSemanticLineLabels);
    items.pred_segments.push_back({view, a, b, label, score});
  } else {
    items.pred_segments.push_back({view, a, b, 0, nonsemantic_score(scores)});
  }
}

}  // namespace

EvalItems collect_items(std::span<const ViewPair> views, const EvalOptions& options) {
  EvalItems items;
  const double side = options.resolution;
  for (std::size_t v = 0; v < views.size(); ++v) {
    const int view = static_cast<int>(v);
    const auto& truth = views[v].truth;
    const Vec2 scale(side / truth.width, side / truth.height);
    for (const auto& s : truth.segments) {
      const Vec2 a = truth.junctions[static_cast<std::size_t>(s.j1)].position.cwiseProduct(scale);
      const Vec2 b = truth.junctions[static_cast<std::size_t>(s.j2)].position.cwiseProduct(scale);
      items.gt_segments.push_back({view, a, b, options.semantic ? index_of(s.label) : 0, 1.0});
    }
    for (const auto& j : truth.junctions) {
      items.gt_junctions.push_back(
          {view, j.position.cwiseProduct(scale), options.semantic ? index_of(j.label) : 0, 1.0});
    }

    const Prediction pred = rescaled(views[v].prediction, side);
    const std::size_t first = items.pred_segments.size();
    if (!pred.junctions.empty()) {
      const auto match = match_to_junctions(pred.segments, pred.junctions, options.tau);
      const auto& w = match.wireframe;
      items.dropped_by_matching += match.dropped_far + match.dropped_collapsed;
      if (options.semantic) {
        for (const auto& s : w.segments) {
          add_segment(items, view, w.junctions[static_cast<std::size_t>(s.j1)].position,
                      w.junctions[static_cast<std::size_t>(s.j2)].position, s.scores, true);
        }
      } else {
        const auto ns = to_nonsemantic(w);
        for (std::size_t k = 0; k < ns.segments.size(); ++k) {
          const auto [a, b] = ns.segments[k];
          items.pred_segments.push_back({view, ns.junctions[static_cast<std::size_t>(a)],
                                         ns.junctions[static_cast<std::size_t>(b)], 0,
                                         ns.segment_scores[k]});
        }
      }
    } else {
      for (const auto& s : pred.segments) add_segment(items, view, s.p1, s.p2, s.scores, options.semantic);
    }
    for (const auto& j : pred.junctions) {
      if (options.semantic) {
        const auto [label, score] = argmax(j.scores, kSemanticJunctionLabels);
        items.pred_junctions.push_back({view, j.position, label, score});
      } else {
        items.pred_junctions.push_back({view, j.position, 0, nonsemantic_score(j.scores)});
      }
    }

    if (options.nms) {
      const std::span<const LabeledSegment> mine(items.pred_segments.data() + first,
                                                 items.pred_segments.size() - first);
      const auto kept = line_nms(mine, options.gamma);
      std::vector<LabeledSegment> survivors;
      for (std::size_t k : kept) survivors.push_back(mine[k]);
      items.removed_by_nms += static_cast<int>(mine.size() - survivors.size());
      items.pred_segments.resize(first);
      items.pred_segments.insert(items.pred_segments.end(), survivors.begin(), survivors.end());
    }
  }
  return items;
}

namespace {

template <typename T, typename Fn>
MetricReport run_metric(const std::string& name, std::span<const T> pred, std::span<const T> gt,
                        const std::vector<double>& thresholds,
                        const std::vector<std::pair<std::string, int>>& labels, Fn fn,
                        std::vector<std::string>& warnings) {
  MetricReport m;
  m.name = name;
  m.thresholds = thresholds;
  m.counts.assign(thresholds.size(), Counts{});
  std::vector<std::vector<double>> table;
  for (const auto& [label_name, label] : labels) {
    LabelResult lr;
    lr.label = label_name;
    std::vector<double> row;
    for (std::size_t t = 0; t < thresholds.size(); ++t) {
      ApResult r = fn(pred, gt, thresholds[t], label);
      if (r.zero_gt) {
        warnings.push_back(name + " " + label_name + "@" + threshold_name(thresholds[t]) +
                           ": no ground truth, AP set to 0");
      }
      m.counts[t].gt += r.gt;
      m.counts[t].predictions += r.predictions;
      m.counts[t].tp += r.tp;
      m.counts[t].fp += r.fp;
      row.push_back(r.ap);
      lr.by_threshold.push_back(std::move(r));
    }
    table.push_back(row);
    m.labels.push_back(std::move(lr));
  }
  const Aggregate agg = aggregate(table);
  m.mean_per_threshold = agg.mean_per_threshold;
  m.mean = agg.mean;
  for (std::size_t k = 0; k < m.labels.size(); ++k) m.labels[k].ap_mean = agg.mean_per_label[k];
  return m;
}

}  // namespace

EvalReport evaluate(std::span<const ViewPair> views, const EvalOptions& options) {
  EvalReport report;
  report.mode = options.semantic ? "semantic" : "nonsemantic";
  report.views = static_cast<int>(views.size());
  report.nms = options.nms;
  report.gamma = options.gamma;
  report.tau = options.tau;
  const EvalItems items = collect_items(views, options);
  report.segments_dropped_by_matching = items.dropped_by_matching;
  report.segments_removed_by_nms = items.removed_by_nms;

  std::vector<std::pair<std::string, int>> line_labels;
  std::vector<std::pair<std::string, int>> junction_labels;
  if (options.semantic) {
    for (auto l : kSemanticLineLabels) line_labels.emplace_back(std::string(to_string(l)), index_of(l));
    for (auto l : kSemanticJunctionLabels) {
      junction_labels.emplace_back(std::string(to_string(l)), index_of(l));
    }
  } else {
    line_labels.emplace_back("line", 0);
    junction_labels.emplace_back("junction", 0);
  }
  report.sap = run_metric<LabeledSegment>(
      "sAP", items.pred_segments, items.gt_segments, options.betas, line_labels,
      [](auto p, auto g, double t, int l) { return sap(p, g, t, l); }, report.warnings);
  report.jap = run_metric<LabeledPoint>(
      "jAP", items.pred_junctions, items.gt_junctions, options.thetas, junction_labels,
      [](auto p, auto g, double t, int l) { return jap(p, g, t, l); }, report.warnings);
  return report;
}

std::string threshold_name(double t) {
  std::ostringstream out;
  out << t;
  return out.str();
}

namespace {

nlohmann::json metric_to_json(const MetricReport& m) {
  using nlohmann::json;
  json per_label = json::object();
  for (const auto& lr : m.labels) {
    json ap = json::object();
    json counts = json::object();
    for (std::size_t t = 0; t < m.thresholds.size(); ++t) {
      const auto& r = lr.by_threshold[t];
      ap[threshold_name(m.thresholds[t])] = r.ap;
      counts[threshold_name(m.thresholds[t])] = {
          {"gt", r.gt}, {"predictions", r.predictions}, {"tp", r.tp}, {"fp", r.fp}};
    }
    per_label[lr.label] = {{"ap", ap}, {"ap_mean", lr.ap_mean}, {"counts", counts}};
  }
  json means = json::object();
  json counts = json::object();
  for (std::size_t t = 0; t < m.thresholds.size(); ++t) {
    means[threshold_name(m.thresholds[t])] = m.mean_per_threshold[t];
    const auto& c = m.counts[t];
    counts[threshold_name(m.thresholds[t])] = {
        {"gt", c.gt}, {"predictions", c.predictions}, {"tp", c.tp}, {"fp", c.fp}};
  }
  return {{"per_label", per_label}, {"mean_per_threshold", means}, {"mean", m.mean}, {"counts", counts}};
}

}  // namespace

nlohmann::json eval_report_to_json(const EvalReport& report) {
  return {{"mode", report.mode},
          {"views", report.views},
          {"nms", report.nms},
          {"gamma", report.gamma},
          {"tau", report.tau},
          {"segments_dropped_by_matching", report.segments_dropped_by_matching},
          {"segments_removed_by_nms", report.segments_removed_by_nms},
          {"sAP", metric_to_json(report.sap)},
          {"jAP", metric_to_json(report.jap)},
          {"warnings", report.warnings}};
}

}  // namespace srw
