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

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "srw/config.hpp"
#include "srw/geometry.hpp"
#include "srw/scene.hpp"

namespace srw {

// ---------------------------------------------------------------------------
// Scenes

/// Parses and cross-references a scene document. Duplicate junctions are
/// merged, plane line lists are chained into closed loops (largest loop is
/// the outer boundary, the rest must be opening holes) and every loop is
/// oriented counter-clockwise seen from its plane normal.
///
/// Planes with fewer than three distinct junctions are kept with an
/// unassembled boundary so that filter_scene can report them.
///
/// Throws ParseError for malformed documents and TopologyError for loops
/// that do not close or that branch.
SceneGraph parse_scene(const nlohmann::json& doc);
SceneGraph load_scene(const std::string& path);

nlohmann::json scene_to_json(const SceneGraph& scene);
void save_scene(const std::string& path, const SceneGraph& scene);

/// Re-orients every assembled loop of `plane` against its current params.
void orient_plane_loops(PlanePolygon& plane, const SceneGraph& scene);

// ---------------------------------------------------------------------------
// Camera views

struct CameraView {
  std::string view_id;
  Intrinsics K;
  RigidTransform world_to_camera;  // q_cam = R q_world + t
  int width = 0;
  int height = 0;
  std::optional<std::string> mask_path;  // relative to the pose file

  bool operator==(const CameraView&) const = default;
};

/// Throws ParseError for malformed input and InvalidRotation when R is not
/// a proper rotation.
CameraView parse_view(const nlohmann::json& doc);
CameraView load_view(const std::string& path);
nlohmann::json view_to_json(const CameraView& view);

// ---------------------------------------------------------------------------
// Semantic masks

enum class MaskClass { door, window, wall, floor, ceiling, other };

std::string_view to_string(MaskClass c);

/// Class id -> semantic class. Ids without an entry are `other`.
class LabelMap {
 public:
  LabelMap() = default;
  explicit LabelMap(std::map<int, MaskClass> entries) : entries_(std::move(entries)) {}

  MaskClass classify(std::uint8_t id) const {
    auto it = entries_.find(id);
    return it == entries_.end() ? MaskClass::other : it->second;
  }
  const std::map<int, MaskClass>& entries() const { return entries_; }

 private:
  std::map<int, MaskClass> entries_;
};

LabelMap parse_label_map(const nlohmann::json& doc);
LabelMap load_label_map(const std::string& path);

struct SemanticMask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // row-major class ids
  LabelMap label_map;

  MaskClass at(int x, int y) const {
    return label_map.classify(pixels[static_cast<std::size_t>(y) * width + x]);
  }
};

SemanticMask load_mask(const std::string& path, const LabelMap& label_map);

/// As above, and throws DimensionMismatch when the mask does not match the
/// view it belongs to.
SemanticMask load_mask(const std::string& path, const LabelMap& label_map,
                       const CameraView& view);

// ---------------------------------------------------------------------------
// Scene filter

enum class FilterReason { ok, plane_with_two_junctions, residual_exceeds_1mm };

std::string_view to_string(FilterReason reason);

struct SceneFilterReport {
  std::string scene_id;
  bool accepted = false;
  FilterReason reason = FilterReason::ok;
  double max_residual_mm = 0.0;
  std::optional<int> offending_plane;
};

struct FilteredScene {
  SceneFilterReport report;
  /// The input scene; plane params are replaced by refits when accepted.
  SceneGraph scene;
};

/// Rejects scenes with planes that cannot define a plane (fewer than three
/// distinct or collinear junctions) and scenes whose refit planes leave a
/// junction farther than `thresholds.max_plane_residual_mm` away.
FilteredScene filter_scene(const SceneGraph& scene, const Thresholds& thresholds = {});

nlohmann::json filter_report_to_json(const SceneFilterReport& report);

}  // namespace srw
