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

// Structural AP for line segments and junction AP. All coordinates are in
// the evaluation frame (128 x 128 by default); callers rescale first.

#pragma once

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "srw/config.hpp"
#include "srw/geometry.hpp"
#include "srw/visibility.hpp"
#include "srw/wireframe.hpp"

namespace srw {

/// Sum of squared endpoint distances, minimized over the two endpoint
/// orderings.
double segment_delta(const Vec2& p1, const Vec2& p2, const Vec2& q1, const Vec2& q2);

/// `label` is an integer class id; `view` separates images.
struct LabeledSegment {
  int view = 0;
  Vec2 p1 = Vec2::Zero();
  Vec2 p2 = Vec2::Zero();
  int label = 0;
  double score = 1.0;
};

struct LabeledPoint {
  int view = 0;
  Vec2 p = Vec2::Zero();
  int label = 0;
  double score = 1.0;
};

/// Indices (ascending) of the segments that survive NMS. A segment is
/// removed iff some segment in the same view with the same label and a
/// higher score (equal score: lower index) lies within delta < gamma^2.
/// Single pass against the input set.
std::vector<std::size_t> line_nms(std::span<const LabeledSegment> segments, double gamma = 3.0);

struct ScoredMatch {
  double score = 0.0;
  bool true_positive = false;
};

struct PrPoint {
  double score = 0.0;
  double recall = 0.0;
  double precision = 0.0;
};

struct ApResult {
  double ap = 0.0;  // [0, 100]
  std::vector<PrPoint> pr;
  int gt = 0;
  int predictions = 0;
  int tp = 0;
  int fp = 0;
  bool zero_gt = false;
};

/// AP under the monotone precision envelope. Matches are swept by
/// descending score, ties in input order.
ApResult average_precision(std::span<const ScoredMatch> matches, int gt_count);

/// Greedy sweep: each prediction of `label` takes the nearest unmatched
/// ground truth of the same view and label; TP iff delta <= beta.
ApResult sap(std::span<const LabeledSegment> predictions, std::span<const LabeledSegment> gt,
             double beta, int label);

/// Same sweep with Euclidean distance <= theta.
ApResult jap(std::span<const LabeledPoint> predictions, std::span<const LabeledPoint> gt,
             double theta, int label);

struct Aggregate {
  std::vector<double> mean_per_threshold;  // msAP^beta
  std::vector<double> mean_per_label;      // sAP^m
  double mean = 0.0;                       // msAP^m
};

/// `ap[label][threshold]`.
Aggregate aggregate(const std::vector<std::vector<double>>& ap);

struct EvalOptions {
  bool semantic = true;
  bool nms = false;
  double gamma = 3.0;
  double tau = 10.0;
  std::vector<double> betas{5.0, 10.0, 15.0};
  std::vector<double> thetas{0.5, 1.0, 2.0};
  double resolution = 128.0;

  static EvalOptions from(const Thresholds& t);
};

struct ViewPair {
  Prediction prediction;
  AnnotatedView truth;
};

struct LabelResult {
  std::string label;
  std::vector<ApResult> by_threshold;
  double ap_mean = 0.0;
};

struct Counts {
  int gt = 0;
  int predictions = 0;
  int tp = 0;
  int fp = 0;
};

struct MetricReport {
  std::string name;  // "sAP" or "jAP"
  std::vector<double> thresholds;
  std::vector<LabelResult> labels;
  std::vector<double> mean_per_threshold;
  double mean = 0.0;
  std::vector<Counts> counts;  // per threshold, summed over labels
};

struct EvalReport {
  std::string mode;  // "semantic" or "nonsemantic"
  int views = 0;
  bool nms = false;
  double gamma = 3.0;
  double tau = 10.0;
  int segments_dropped_by_matching = 0;
  int segments_removed_by_nms = 0;
  MetricReport sap;
  MetricReport jap;
  std::vector<std::string> warnings;
};

/// Per-view labeled items in the evaluation frame, as fed to sap / jap.
struct EvalItems {
  std::vector<LabeledSegment> pred_segments;
  std::vector<LabeledSegment> gt_segments;
  std::vector<LabeledPoint> pred_junctions;
  std::vector<LabeledPoint> gt_junctions;
  int dropped_by_matching = 0;
  int removed_by_nms = 0;
};

EvalItems collect_items(std::span<const ViewPair> views, const EvalOptions& options);

EvalReport evaluate(std::span<const ViewPair> views, const EvalOptions& options);

nlohmann::json eval_report_to_json(const EvalReport& report);

/// Stable text for a threshold: 5 -> "5", 0.5 -> "0.5".
std::string threshold_name(double t);

}  // namespace srw
