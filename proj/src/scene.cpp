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

#include "srw/scene.hpp"

#include <algorithm>
#include <set>

#include "srw/error.hpp"

namespace srw {

namespace {

template <class T>
auto find_by_id(T& items, int id) -> decltype(&items.front()) {
  auto it = std::lower_bound(items.begin(), items.end(), id,
                             [](const auto& item, int key) {
                               if constexpr (requires { item.plane_id; }) {
                                 return item.plane_id < key;
                               } else {
                                 return item.id < key;
                               }
                             });
  if (it == items.end()) return nullptr;
  if constexpr (requires { it->plane_id; }) {
    return it->plane_id == id ? &*it : nullptr;
  } else {
    return it->id == id ? &*it : nullptr;
  }
}

}  // namespace

const Junction3D& SceneGraph::junction(int id) const {
  if (auto* j = find_by_id(junctions, id)) return *j;
  throw TopologyError("unknown junction id " + std::to_string(id));
}

const Line3D& SceneGraph::line(int id) const {
  if (auto* l = find_by_id(lines, id)) return *l;
  throw TopologyError("unknown line id " + std::to_string(id));
}

const PlanePolygon& SceneGraph::plane(int id) const {
  if (auto* p = find_by_id(planes, id)) return *p;
  throw TopologyError("unknown plane id " + std::to_string(id));
}

PlanePolygon& SceneGraph::plane(int id) {
  if (auto* p = find_by_id(planes, id)) return *p;
  throw TopologyError("unknown plane id " + std::to_string(id));
}

bool SceneGraph::has_plane(int id) const { return find_by_id(planes, id) != nullptr; }

std::vector<int> SceneGraph::plane_junction_ids(const PlanePolygon& plane) const {
  std::set<int> ids;
  for (int lid : plane.line_ids) {
    const auto& l = line(lid);
    ids.insert(l.j1);
    ids.insert(l.j2);
  }
  return {ids.begin(), ids.end()};
}

std::vector<Vec3> SceneGraph::plane_junction_positions(const PlanePolygon& plane) const {
  std::vector<Vec3> out;
  for (int id : plane_junction_ids(plane)) out.push_back(position(id));
  return out;
}

std::vector<Vec3> SceneGraph::loop_positions(const std::vector<int>& loop) const {
  std::vector<Vec3> out;
  out.reserve(loop.size());
  for (int id : loop) out.push_back(position(id));
  return out;
}

LineLabel line_label_for(const Line3D& line, const SceneGraph& scene) {
  const auto& adj = line.adjacent_planes;
  if (adj.size() == 1) {
    return line_label_from_planes(scene.plane(adj[0]).label, PlaneLabel::wall);
  }
  if (adj.size() == 2) {
    return line_label_from_planes(scene.plane(adj[0]).label, scene.plane(adj[1]).label);
  }
  throw TopologyError("line " + std::to_string(line.id) + " has " +
                      std::to_string(adj.size()) + " adjacent planes");
}

}  // namespace srw
