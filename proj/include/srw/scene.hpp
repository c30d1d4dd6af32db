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

#include <optional>
#include <string>
#include <vector>

#include "srw/geometry.hpp"
#include "srw/labels.hpp"

namespace srw {

struct Junction3D {
  int id = 0;
  Vec3 position = Vec3::Zero();  // world frame, mm

  bool operator==(const Junction3D&) const = default;
};

struct Line3D {
  int id = 0;
  int j1 = 0;
  int j2 = 0;
  std::vector<int> adjacent_planes;  // sorted plane ids

  bool operator==(const Line3D&) const = default;
};

enum class OpeningKind { door, window };

/// A door or window hole in a structural plane. `door_id` is the plane id
/// of the opening's own plane.
struct Opening {
  std::vector<int> loop;  // junction ids
  OpeningKind kind = OpeningKind::door;
  int door_id = 0;

  bool operator==(const Opening&) const = default;
};

struct PlanePolygon {
  int plane_id = 0;
  PlaneParams params;
  std::vector<int> line_ids;       // as listed in the scene file
  std::vector<int> outer_boundary; // junction loop, CCW seen from the normal side
  std::vector<Opening> openings;   // filled on the parent wall only
  PlaneLabel label = PlaneLabel::wall;
  std::string semantic;
  std::optional<int> parent_wall;  // set on door/window opening planes

  bool is_opening() const { return parent_wall.has_value(); }
  bool operator==(const PlanePolygon&) const = default;
};

class SceneGraph {
 public:
  std::string scene_id;
  std::vector<Junction3D> junctions;  // sorted by id
  std::vector<Line3D> lines;          // sorted by id
  std::vector<PlanePolygon> planes;   // sorted by id

  const Junction3D& junction(int id) const;
  const Line3D& line(int id) const;
  const PlanePolygon& plane(int id) const;
  PlanePolygon& plane(int id);
  bool has_plane(int id) const;

  const Vec3& position(int junction_id) const { return junction(junction_id).position; }

  /// Distinct junction ids touched by the plane's lines, ascending.
  std::vector<int> plane_junction_ids(const PlanePolygon& plane) const;
  std::vector<Vec3> plane_junction_positions(const PlanePolygon& plane) const;
  std::vector<Vec3> loop_positions(const std::vector<int>& loop) const;

  bool operator==(const SceneGraph&) const = default;
};

/// One label per line. Two adjacent planes use line_label_from_planes; a
/// single adjacent plane uses its (label, wall) row.
LineLabel line_label_for(const Line3D& line, const SceneGraph& scene);

}  // namespace srw
