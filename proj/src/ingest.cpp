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

#include "srw/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

#include <Eigen/Geometry>

#include "srw/error.hpp"
#include "srw/png_io.hpp"
#include "srw/polygon.hpp"

namespace srw {

using nlohmann::json;

namespace {

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << doc.dump(2) << '\n';
}

template <class T>
T field(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) {
    throw ParseError(std::string("missing field '") + key + "'");
  }
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("field '") + key + "': " + e.what());
  }
}

Vec3 vec3_field(const json& doc, const char* key) {
  const auto v = field<std::vector<double>>(doc, key);
  if (v.size() != 3) throw ParseError(std::string("field '") + key + "' needs 3 numbers");
  Vec3 out(v[0], v[1], v[2]);
  if (!out.allFinite()) throw ParseError(std::string("field '") + key + "' is not finite");
  return out;
}

// Area vector of a closed 3D loop (Newell); its norm is the loop area.
Vec3 loop_area_vector(const std::vector<Vec3>& pts) {
  Vec3 a = Vec3::Zero();
  for (std::size_t i = 0; i < pts.size(); ++i) a += pts[i].cross(pts[(i + 1) % pts.size()]);
  return 0.5 * a;
}

// Rotates so the smallest junction id comes first; keeps direction.
void canonical_start(std::vector<int>& loop) {
  auto it = std::min_element(loop.begin(), loop.end());
  std::rotate(loop.begin(), it, loop.end());
}

void orient_loop(std::vector<int>& loop, const Vec3& normal, const SceneGraph& scene) {
  if (loop_area_vector(scene.loop_positions(loop)).dot(normal) < 0.0) {
    std::reverse(loop.begin(), loop.end());
  }
  canonical_start(loop);
}

std::vector<std::vector<int>> chain_loops(const PlanePolygon& plane, const SceneGraph& scene) {
  std::map<int, std::vector<int>> incident;  // junction -> neighbouring junctions
  for (int lid : plane.line_ids) {
    const auto& l = scene.line(lid);
    incident[l.j1].push_back(l.j2);
    incident[l.j2].push_back(l.j1);
  }
  const std::string where = "plane " + std::to_string(plane.plane_id) + ": ";
  for (const auto& [jid, nbrs] : incident) {
    if (nbrs.size() == 1) {
      throw TopologyError(where + "open chain at junction " + std::to_string(jid));
    }
    if (nbrs.size() > 2) {
      throw TopologyError(where + "branching chain at junction " + std::to_string(jid));
    }
    if (nbrs[0] == nbrs[1]) {
      throw TopologyError(where + "repeated edge at junction " + std::to_string(jid));
    }
  }

  std::vector<std::vector<int>> loops;
  std::set<int> visited;
  for (const auto& [start, nbrs] : incident) {
    if (visited.count(start)) continue;
    std::vector<int> loop{start};
    visited.insert(start);
    int prev = start;
    int cur = nbrs[0];
    while (cur != start) {
      if (visited.count(cur)) {
        throw TopologyError(where + "loop revisits junction " + std::to_string(cur));
      }
      visited.insert(cur);
      loop.push_back(cur);
      const auto& next = incident.at(cur);
      const int nxt = next[0] == prev ? next[1] : next[0];
      prev = cur;
      cur = nxt;
    }
    if (loop.size() < 3) throw TopologyError(where + "loop with fewer than 3 junctions");
    loops.push_back(std::move(loop));
  }
  return loops;
}

std::set<int> as_set(const std::vector<int>& v) { return {v.begin(), v.end()}; }

}  // namespace

void orient_plane_loops(PlanePolygon& plane, const SceneGraph& scene) {
  const Vec3 n = plane.params.normal();
  if (plane.outer_boundary.size() >= 3 && as_set(plane.outer_boundary).size() >= 3) {
    orient_loop(plane.outer_boundary, n, scene);
  }
  for (auto& op : plane.openings) orient_loop(op.loop, n, scene);
}

SceneGraph parse_scene(const json& doc) {
  const Tolerances& tol = default_tolerances();
  SceneGraph scene;
  scene.scene_id = field<std::string>(doc, "scene_id");

  // Junctions, merging exact duplicates onto the lowest id.
  std::map<int, int> remap;
  {
    std::vector<Junction3D> raw;
    for (const auto& j : field<json>(doc, "junctions")) {
      raw.push_back({field<int>(j, "id"), vec3_field(j, "xyz")});
    }
    std::sort(raw.begin(), raw.end(), [](auto& a, auto& b) { return a.id < b.id; });
    for (std::size_t i = 0; i + 1 < raw.size(); ++i) {
      if (raw[i].id == raw[i + 1].id) {
        throw ParseError("duplicate junction id " + std::to_string(raw[i].id));
      }
    }
    for (const auto& j : raw) {
      int target = j.id;
      for (const auto& kept : scene.junctions) {
        if ((kept.position - j.position).norm() <= tol.plane) {
          target = kept.id;
          break;
        }
      }
      remap[j.id] = target;
      if (target == j.id) scene.junctions.push_back(j);
    }
  }

  // Lines; ones that collapse onto a single junction are dropped.
  std::set<int> dropped_lines;
  for (const auto& l : field<json>(doc, "lines")) {
    const int id = field<int>(l, "id");
    const auto ends = field<std::vector<int>>(l, "junctions");
    if (ends.size() != 2) throw ParseError("line " + std::to_string(id) + " needs 2 junctions");
    for (int e : ends) {
      if (!remap.count(e)) {
        throw TopologyError("line " + std::to_string(id) + " references unknown junction " +
                            std::to_string(e));
      }
    }
    const int a = remap[ends[0]];
    const int b = remap[ends[1]];
    if (a == b) {
      dropped_lines.insert(id);
      continue;
    }
    scene.lines.push_back({id, a, b, {}});
  }
  std::sort(scene.lines.begin(), scene.lines.end(), [](auto& x, auto& y) { return x.id < y.id; });
  for (std::size_t i = 0; i + 1 < scene.lines.size(); ++i) {
    if (scene.lines[i].id == scene.lines[i + 1].id) {
      throw ParseError("duplicate line id " + std::to_string(scene.lines[i].id));
    }
  }

  for (const auto& p : field<json>(doc, "planes")) {
    PlanePolygon plane;
    plane.plane_id = field<int>(p, "id");
    for (int lid : field<std::vector<int>>(p, "lines")) {
      if (!dropped_lines.count(lid)) plane.line_ids.push_back(lid);
    }
    const Vec3 normal = vec3_field(p, "normal");
    const double offset = field<double>(p, "offset");
    if (!std::isfinite(offset) || !(normal.norm() > 0.0)) {
      throw ParseError("plane " + std::to_string(plane.plane_id) + " has invalid parameters");
    }
    plane.params = PlaneParams(normal, offset);
    plane.label = plane_label_from_string(field<std::string>(p, "label"));
    plane.semantic = p.contains("semantic") && !p["semantic"].is_null()
                         ? field<std::string>(p, "semantic")
                         : std::string{};
    if (p.contains("parent_wall") && !p["parent_wall"].is_null()) {
      plane.parent_wall = field<int>(p, "parent_wall");
    }
    scene.planes.push_back(std::move(plane));
  }
  std::sort(scene.planes.begin(), scene.planes.end(),
            [](auto& x, auto& y) { return x.plane_id < y.plane_id; });
  for (std::size_t i = 0; i + 1 < scene.planes.size(); ++i) {
    if (scene.planes[i].plane_id == scene.planes[i + 1].plane_id) {
      throw ParseError("duplicate plane id " + std::to_string(scene.planes[i].plane_id));
    }
  }

  // Line adjacency.
  for (const auto& plane : scene.planes) {
    for (int lid : plane.line_ids) {
      auto it = std::lower_bound(scene.lines.begin(), scene.lines.end(), lid,
                                 [](const Line3D& l, int key) { return l.id < key; });
      if (it == scene.lines.end() || it->id != lid) {
        throw TopologyError("plane " + std::to_string(plane.plane_id) +
                            " references unknown line " + std::to_string(lid));
      }
      auto& adj = it->adjacent_planes;
      if (std::find(adj.begin(), adj.end(), plane.plane_id) == adj.end()) {
        adj.push_back(plane.plane_id);
      }
    }
  }
  for (auto& l : scene.lines) {
    std::sort(l.adjacent_planes.begin(), l.adjacent_planes.end());
    if (l.adjacent_planes.empty() || l.adjacent_planes.size() > 2) {
      throw TopologyError("line " + std::to_string(l.id) + " is on " +
                          std::to_string(l.adjacent_planes.size()) + " planes");
    }
  }

  // Polygon loops per plane.
  std::map<int, std::vector<std::vector<int>>> inner_loops;
  for (auto& plane : scene.planes) {
    const auto ids = scene.plane_junction_ids(plane);
    if (ids.size() < 3) {
      plane.outer_boundary = ids;  // left for filter_scene to reject
      continue;
    }
    auto loops = chain_loops(plane, scene);
    std::size_t outer = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < loops.size(); ++i) {
      const double area = loop_area_vector(scene.loop_positions(loops[i])).norm();
      if (area > best) {
        best = area;
        outer = i;
      }
    }
    plane.outer_boundary = loops[outer];
    for (std::size_t i = 0; i < loops.size(); ++i) {
      if (i != outer) inner_loops[plane.plane_id].push_back(loops[i]);
    }
  }

  // Attach openings to their parent walls.
  for (const auto& op_plane : scene.planes) {
    if (!op_plane.parent_wall) continue;
    const std::string where = "opening plane " + std::to_string(op_plane.plane_id) + ": ";
    if (op_plane.label != PlaneLabel::door && op_plane.label != PlaneLabel::window) {
      throw TopologyError(where + "only doors and windows can have a parent wall");
    }
    if (!scene.has_plane(*op_plane.parent_wall)) {
      throw TopologyError(where + "unknown parent wall " + std::to_string(*op_plane.parent_wall));
    }
    auto& parent = scene.plane(*op_plane.parent_wall);
    if (parent.parent_wall) throw TopologyError(where + "parent is itself an opening");
    if (op_plane.outer_boundary.size() < 3 || parent.outer_boundary.size() < 3) continue;
    Opening op;
    op.loop = op_plane.outer_boundary;
    op.kind = op_plane.label == PlaneLabel::door ? OpeningKind::door : OpeningKind::window;
    op.door_id = op_plane.plane_id;
    parent.openings.push_back(std::move(op));
  }

  for (auto& plane : scene.planes) {
    std::sort(plane.openings.begin(), plane.openings.end(),
              [](auto& a, auto& b) { return a.door_id < b.door_id; });
    for (const auto& loop : inner_loops[plane.plane_id]) {
      const auto key = as_set(loop);
      const bool matched = std::any_of(plane.openings.begin(), plane.openings.end(),
                                       [&](const Opening& op) { return as_set(op.loop) == key; });
      if (!matched) {
        throw TopologyError("plane " + std::to_string(plane.plane_id) +
                            " has an inner loop that matches no opening plane");
      }
    }
    if (plane.openings.empty()) continue;
    const PlaneFrame frame = PlaneFrame::on_plane(plane.params, scene.position(plane.outer_boundary[0]));
    Polygon2D outer;
    for (const auto& p : scene.loop_positions(plane.outer_boundary)) outer.push_back(frame.to_2d(p));
    for (const auto& op : plane.openings) {
      for (const auto& p : scene.loop_positions(op.loop)) {
        const Vec2 q = frame.to_2d(p);
        if (!point_in_polygon(outer, q) || on_boundary(outer, q, tol.plane)) {
          throw TopologyError("opening " + std::to_string(op.door_id) +
                              " is not strictly inside plane " + std::to_string(plane.plane_id));
        }
      }
    }
  }

  for (auto& plane : scene.planes) orient_plane_loops(plane, scene);
  return scene;
}

SceneGraph load_scene(const std::string& path) {
  const json doc = read_json_file(path);
  try {
    return parse_scene(doc);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

json scene_to_json(const SceneGraph& scene) {
  json doc;
  doc["scene_id"] = scene.scene_id;
  json junctions = json::array();
  for (const auto& j : scene.junctions) {
    junctions.push_back({{"id", j.id}, {"xyz", {j.position.x(), j.position.y(), j.position.z()}}});
  }
  json lines = json::array();
  for (const auto& l : scene.lines) lines.push_back({{"id", l.id}, {"junctions", {l.j1, l.j2}}});
  json planes = json::array();
  for (const auto& p : scene.planes) {
    const Vec3 n = p.params.normal();
    json jp = {{"id", p.plane_id},
               {"lines", p.line_ids},
               {"normal", {n.x(), n.y(), n.z()}},
               {"offset", p.params.offset()},
               {"label", std::string(to_string(p.label))},
               {"semantic", p.semantic}};
    jp["parent_wall"] = p.parent_wall ? json(*p.parent_wall) : json(nullptr);
    planes.push_back(std::move(jp));
  }
  doc["junctions"] = std::move(junctions);
  doc["lines"] = std::move(lines);
  doc["planes"] = std::move(planes);
  return doc;
}

void save_scene(const std::string& path, const SceneGraph& scene) {
  write_json_file(path, scene_to_json(scene));
}

// ---------------------------------------------------------------------------

CameraView parse_view(const json& doc) {
  CameraView view;
  view.view_id = field<std::string>(doc, "view_id");
  view.width = field<int>(doc, "width");
  view.height = field<int>(doc, "height");
  view.K.fx = field<double>(doc, "fx");
  view.K.fy = field<double>(doc, "fy");
  view.K.cx = field<double>(doc, "cx");
  view.K.cy = field<double>(doc, "cy");
  const auto r = field<std::vector<double>>(doc, "R");
  const auto t = field<std::vector<double>>(doc, "t");
  if (r.size() != 9 || t.size() != 3) throw ParseError("R needs 9 numbers and t needs 3");
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) view.world_to_camera.R(i, k) = r[3 * i + k];
    view.world_to_camera.t[i] = t[i];
  }
  if (doc.contains("mask") && !doc["mask"].is_null()) {
    view.mask_path = field<std::string>(doc, "mask");
  }

  if (view.width <= 0 || view.height <= 0) throw ParseError("image size must be positive");
  const auto& K = view.K;
  if (!(K.fx > 0.0) || !(K.fy > 0.0) || !(K.cx >= 0.0 && K.cx <= view.width) ||
      !(K.cy >= 0.0 && K.cy <= view.height)) {
    throw ParseError("invalid intrinsics for view " + view.view_id);
  }
  if (!view.world_to_camera.t.allFinite()) throw ParseError("translation is not finite");
  if (!view.world_to_camera.is_valid()) {
    throw InvalidRotation("view " + view.view_id + " rotation is not orthonormal with det 1");
  }
  return view;
}

CameraView load_view(const std::string& path) {
  const json doc = read_json_file(path);
  try {
    return parse_view(doc);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

json view_to_json(const CameraView& view) {
  json doc;
  doc["view_id"] = view.view_id;
  doc["width"] = view.width;
  doc["height"] = view.height;
  doc["fx"] = view.K.fx;
  doc["fy"] = view.K.fy;
  doc["cx"] = view.K.cx;
  doc["cy"] = view.K.cy;
  json r = json::array();
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) r.push_back(view.world_to_camera.R(i, k));
  }
  doc["R"] = std::move(r);
  const auto& t = view.world_to_camera.t;
  doc["t"] = {t.x(), t.y(), t.z()};
  doc["mask"] = view.mask_path ? json(*view.mask_path) : json(nullptr);
  return doc;
}

// ---------------------------------------------------------------------------

std::string_view to_string(MaskClass c) {
  switch (c) {
    case MaskClass::door: return "door";
    case MaskClass::window: return "window";
    case MaskClass::wall: return "wall";
    case MaskClass::floor: return "floor";
    case MaskClass::ceiling: return "ceiling";
    case MaskClass::other: return "other";
  }
  return "?";
}

LabelMap parse_label_map(const json& doc) {
  if (!doc.is_object()) throw ParseError("label map must be an object");
  std::map<int, MaskClass> entries;
  for (const auto& [key, value] : doc.items()) {
    int id = 0;
    try {
      std::size_t used = 0;
      id = std::stoi(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw ParseError("label map key '" + key + "' is not an integer");
    }
    if (id < 0 || id > 255) throw ParseError("label map id " + key + " out of 8-bit range");
    if (!value.is_string()) throw ParseError("label map value for " + key + " must be a string");
    const auto name = value.get<std::string>();
    MaskClass cls = MaskClass::other;
    bool found = false;
    for (auto c : {MaskClass::door, MaskClass::window, MaskClass::wall, MaskClass::floor,
                   MaskClass::ceiling, MaskClass::other}) {
      if (to_string(c) == name) {
        cls = c;
        found = true;
      }
    }
    if (!found) throw ParseError("unknown mask class '" + name + "'");
    entries[id] = cls;
  }
  return LabelMap(std::move(entries));
}

LabelMap load_label_map(const std::string& path) {
  const json doc = read_json_file(path);
  try {
    return parse_label_map(doc);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

SemanticMask load_mask(const std::string& path, const LabelMap& label_map) {
  GrayImage img = read_gray_png(path);
  SemanticMask mask;
  mask.width = img.width;
  mask.height = img.height;
  mask.pixels = std::move(img.pixels);
  mask.label_map = label_map;
  return mask;
}

SemanticMask load_mask(const std::string& path, const LabelMap& label_map,
                       const CameraView& view) {
  SemanticMask mask = load_mask(path, label_map);
  if (mask.width != view.width || mask.height != view.height) {
    throw DimensionMismatch(path + " is " + std::to_string(mask.width) + "x" +
                            std::to_string(mask.height) + " but view " + view.view_id + " is " +
                            std::to_string(view.width) + "x" + std::to_string(view.height));
  }
  return mask;
}

// ---------------------------------------------------------------------------

std::string_view to_string(FilterReason reason) {
  switch (reason) {
    case FilterReason::ok: return "ok";
    case FilterReason::plane_with_two_junctions: return "plane_with_two_junctions";
    case FilterReason::residual_exceeds_1mm: return "residual_exceeds_1mm";
  }
  return "?";
}

FilteredScene filter_scene(const SceneGraph& scene, const Thresholds& thresholds) {
  FilteredScene out{{scene.scene_id, true, FilterReason::ok, 0.0, std::nullopt}, scene};
  auto& report = out.report;

  for (const auto& plane : scene.planes) {
    if (scene.plane_junction_ids(plane).size() < 3) {
      report.accepted = false;
      report.reason = FilterReason::plane_with_two_junctions;
      report.offending_plane = plane.plane_id;
      return out;
    }
  }

  std::vector<PlaneParams> refits;
  for (const auto& plane : scene.planes) {
    const auto pts = scene.plane_junction_positions(plane);
    PlaneParams fit;
    try {
      fit = fit_plane_dlt(pts);
    } catch (const DegenerateFit&) {
      // Collinear junctions define a plane no better than two junctions do.
      report.accepted = false;
      report.reason = FilterReason::plane_with_two_junctions;
      report.offending_plane = plane.plane_id;
      return out;
    }
    const double worst = residual_summary(fit, pts).max;
    if (worst > report.max_residual_mm) {
      report.max_residual_mm = worst;
      if (worst > thresholds.max_plane_residual_mm) report.offending_plane = plane.plane_id;
    }
    refits.push_back(fit);
  }

  if (report.max_residual_mm > thresholds.max_plane_residual_mm) {
    report.accepted = false;
    report.reason = FilterReason::residual_exceeds_1mm;
    return out;
  }

  for (std::size_t i = 0; i < out.scene.planes.size(); ++i) {
    out.scene.planes[i].params = refits[i];
  }
  for (auto& plane : out.scene.planes) orient_plane_loops(plane, out.scene);
  return out;
}

json filter_report_to_json(const SceneFilterReport& report) {
  json doc = {{"scene_id", report.scene_id},
              {"accepted", report.accepted},
              {"reason", std::string(to_string(report.reason))},
              {"max_residual_mm", report.max_residual_mm}};
  doc["offending_plane"] = report.offending_plane ? json(*report.offending_plane) : json(nullptr);
  return doc;
}

}  // namespace srw
