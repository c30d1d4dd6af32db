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

#include "srw/wireframe.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <set>

#include "srw/error.hpp"

namespace srw {

namespace {

std::pair<int, int> ordered(int a, int b) { return a < b ? std::pair{a, b} : std::pair{b, a}; }

// Nearest junction index and its distance; ties go to the lowest index.
std::pair<int, double> nearest(const Vec2& p, std::span<const ScoredJunction> junctions) {
  int best = -1;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < junctions.size(); ++i) {
    const double d = (junctions[i].position - p).norm();
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(i);
    }
  }
  return {best, best_d};
}

}  // namespace

void Wireframe2D::validate() const {
  const int n = static_cast<int>(junctions.size());
  std::set<std::pair<int, int>> seen;
  for (const auto& s : segments) {
    if (s.j1 < 0 || s.j2 < 0 || s.j1 >= n || s.j2 >= n) {
      throw TopologyError("segment junction index out of range");
    }
    if (s.j1 == s.j2) throw TopologyError("segment joins a junction to itself");
    if (!seen.insert(ordered(s.j1, s.j2)).second) {
      throw TopologyError("duplicate junction pair " + std::to_string(s.j1) + "-" +
                          std::to_string(s.j2));
    }
  }
}

MatchReport match_to_junctions(std::span<const RawSegment> segments,
                               std::span<const ScoredJunction> junctions, double tau) {
  if (!(tau > 0.0)) throw Error("tau must be positive");
  MatchReport report;
  report.wireframe.junctions.assign(junctions.begin(), junctions.end());
  std::map<std::pair<int, int>, std::size_t> by_pair;
  for (const auto& s : segments) {
    const auto [a, da] = nearest(s.p1, junctions);
    const auto [b, db] = nearest(s.p2, junctions);
    if (a < 0 || !(da < tau) || !(db < tau)) {
      ++report.dropped_far;
      continue;
    }
    if (a == b) {
      ++report.dropped_collapsed;
      continue;
    }
    auto [it, inserted] = by_pair.try_emplace(ordered(a, b), report.wireframe.segments.size());
    if (inserted) {
      report.wireframe.segments.push_back({a, b, s.scores});
    } else {
      auto& kept = report.wireframe.segments[it->second].scores;
      for (std::size_t k = 0; k < kept.size(); ++k) kept[k] = std::max(kept[k], s.scores[k]);
      ++report.merged_duplicates;
    }
  }
  return report;
}

Graph junction_graph(const Wireframe2D& w) {
  Graph g;
  g.node_count = static_cast<int>(w.junctions.size());
  for (const auto& s : w.segments) g.edges.push_back(ordered(s.j1, s.j2));
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

Graph line_graph(const Wireframe2D& w) {
  Graph g;
  g.node_count = static_cast<int>(w.segments.size());
  std::vector<std::vector<int>> incident(w.junctions.size());
  for (std::size_t i = 0; i < w.segments.size(); ++i) {
    incident[static_cast<std::size_t>(w.segments[i].j1)].push_back(static_cast<int>(i));
    incident[static_cast<std::size_t>(w.segments[i].j2)].push_back(static_cast<int>(i));
  }
  // Two distinct segments share at most one junction, so no edge repeats.
  for (const auto& segs : incident) {
    for (std::size_t a = 0; a < segs.size(); ++a) {
      for (std::size_t b = a + 1; b < segs.size(); ++b) g.edges.push_back(ordered(segs[a], segs[b]));
    }
  }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

NonSemanticWireframe to_nonsemantic(const Wireframe2D& w) {
  NonSemanticWireframe out;
  for (const auto& j : w.junctions) {
    out.junctions.push_back(j.position);
    out.junction_scores.push_back(nonsemantic_score(j.scores));
  }
  for (const auto& s : w.segments) {
    out.segments.emplace_back(s.j1, s.j2);
    out.segment_scores.push_back(nonsemantic_score(s.scores));
  }
  return out;
}

namespace {

using nlohmann::json;

template <typename Label, std::size_t N>
std::array<double, N> parse_scores(const json& obj, const std::array<Label, N>& labels) {
  std::array<double, N> out{};
  if (!obj.is_object()) throw ParseError("scores must be an object");
  for (std::size_t k = 0; k < N; ++k) {
    const std::string name(to_string(labels[k]));
    if (!obj.contains(name)) throw ParseError("scores missing label " + name);
    const double v = obj.at(name).get<double>();
    if (!(v >= 0.0 && v <= 1.0)) throw ParseError("score for " + name + " outside [0, 1]");
    out[k] = v;
  }
  return out;
}

template <typename Label, std::size_t N>
json scores_to_json(const std::array<double, N>& scores, const std::array<Label, N>& labels) {
  json obj = json::object();
  for (std::size_t k = 0; k < N; ++k) obj[std::string(to_string(labels[k]))] = scores[k];
  return obj;
}

}  // namespace

json prediction_to_json(const Prediction& p) {
  json junctions = json::array();
  for (const auto& j : p.junctions) {
    junctions.push_back({{"xy", {j.position.x(), j.position.y()}},
                         {"scores", scores_to_json(j.scores, kJunctionLabels)}});
  }
  json segments = json::array();
  for (const auto& s : p.segments) {
    segments.push_back({{"xy", {s.p1.x(), s.p1.y(), s.p2.x(), s.p2.y()}},
                        {"scores", scores_to_json(s.scores, kLineLabels)}});
  }
  return {{"view_id", p.view_id},
          {"width", p.width},
          {"height", p.height},
          {"junctions", std::move(junctions)},
          {"segments", std::move(segments)}};
}

Prediction parse_prediction(const json& doc) {
  Prediction p;
  try {
    p.view_id = doc.at("view_id").get<std::string>();
    p.width = doc.at("width").get<int>();
    p.height = doc.at("height").get<int>();
    if (p.width <= 0 || p.height <= 0) throw ParseError("prediction size must be positive");
    if (doc.contains("junctions")) {
      for (const auto& j : doc.at("junctions")) {
        const auto xy = j.at("xy").get<std::vector<double>>();
        if (xy.size() != 2) throw ParseError("junction xy needs 2 numbers");
        p.junctions.push_back({Vec2(xy[0], xy[1]), parse_scores(j.at("scores"), kJunctionLabels)});
      }
    }
    for (const auto& s : doc.at("segments")) {
      const auto xy = s.at("xy").get<std::vector<double>>();
      if (xy.size() != 4) throw ParseError("segment xy needs 4 numbers");
      p.segments.push_back({Vec2(xy[0], xy[1]), Vec2(xy[2], xy[3]),
                            parse_scores(s.at("scores"), kLineLabels)});
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("prediction: ") + e.what());
  }
  return p;
}

Prediction load_prediction(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return parse_prediction(json::parse(in));
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

Prediction rescaled(const Prediction& p, double side) {
  Prediction out = p;
  const Vec2 scale(side / p.width, side / p.height);
  for (auto& j : out.junctions) j.position = j.position.cwiseProduct(scale);
  for (auto& s : out.segments) {
    s.p1 = s.p1.cwiseProduct(scale);
    s.p2 = s.p2.cwiseProduct(scale);
  }
  out.width = static_cast<int>(side);
  out.height = static_cast<int>(side);
  return out;
}

}  // namespace srw
