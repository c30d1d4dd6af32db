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

// Scored wireframes as produced by a line/junction detector, plus the
// junction graph and line graph built on top of them.

#pragma once

#include <array>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "srw/geometry.hpp"
#include "srw/labels.hpp"

namespace srw {

using JunctionScores = std::array<double, kJunctionLabels.size()>;  // by index_of(JunctionLabel)
using LineScores = std::array<double, kLineLabels.size()>;          // by index_of(LineLabel)

struct ScoredJunction {
  Vec2 position = Vec2::Zero();
  JunctionScores scores{};
};

/// Segment in endpoint form, before matching.
struct RawSegment {
  Vec2 p1 = Vec2::Zero();
  Vec2 p2 = Vec2::Zero();
  LineScores scores{};
};

/// Segment in matched form: indices into Wireframe2D::junctions.
struct ScoredSegment {
  int j1 = 0;
  int j2 = 0;
  LineScores scores{};
};

struct Wireframe2D {
  std::vector<ScoredJunction> junctions;
  std::vector<ScoredSegment> segments;

  /// Throws TopologyError on bad or repeated junction pairs.
  void validate() const;
};

struct MatchReport {
  Wireframe2D wireframe;
  int dropped_far = 0;       // an endpoint has no junction closer than tau
  int dropped_collapsed = 0;  // both endpoints snapped to the same junction
  int merged_duplicates = 0;  // folded into an earlier segment on the same pair
};

/// Snaps both endpoints to their nearest junction (ties to the lowest index).
/// A segment survives iff both distances are < tau and the junctions differ.
/// Segments on the same unordered pair are merged with per-label max scores
/// and keep the position of the first one.
MatchReport match_to_junctions(std::span<const RawSegment> segments,
                               std::span<const ScoredJunction> junctions, double tau = 10.0);

struct Graph {
  int node_count = 0;
  std::vector<std::pair<int, int>> edges;  // (a, b) with a < b, sorted
};

Graph junction_graph(const Wireframe2D& w);

/// Nodes are segments; two segments are adjacent iff they share a junction.
Graph line_graph(const Wireframe2D& w);

/// Single-class wireframe scored 1 - invalid.
struct NonSemanticWireframe {
  std::vector<Vec2> junctions;
  std::vector<double> junction_scores;
  std::vector<std::pair<int, int>> segments;
  std::vector<double> segment_scores;
};

NonSemanticWireframe to_nonsemantic(const Wireframe2D& w);

inline double nonsemantic_score(const LineScores& s) { return 1.0 - s[index_of(LineLabel::invalid)]; }
inline double nonsemantic_score(const JunctionScores& s) {
  return 1.0 - s[index_of(JunctionLabel::invalid)];
}

/// Detector output for one view, in image pixels.
struct Prediction {
  std::string view_id;
  int width = 0;
  int height = 0;
  std::vector<ScoredJunction> junctions;
  std::vector<RawSegment> segments;
};

nlohmann::json prediction_to_json(const Prediction& p);
Prediction parse_prediction(const nlohmann::json& doc);
Prediction load_prediction(const std::string& path);

/// Coordinates scaled by (side / width, side / height).
Prediction rescaled(const Prediction& p, double side);

}  // namespace srw
