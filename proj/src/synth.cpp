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

#include "srw/synth.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>

#include <Eigen/Geometry>

#include "srw/error.hpp"
#include "srw/png_io.hpp"
#include "srw/polygon.hpp"

namespace srw::synth {

using nlohmann::json;

int SceneBuilder::junction(const Vec3& p) {
  junctions_.push_back(p);
  return static_cast<int>(junctions_.size()) - 1;
}

int SceneBuilder::line(int a, int b) {
  const auto key = a < b ? std::pair{a, b} : std::pair{b, a};
  auto [it, inserted] = line_ids_.try_emplace(key, static_cast<int>(lines_.size()));
  if (inserted) lines_.emplace_back(a, b);
  return it->second;
}

int SceneBuilder::plane(const std::vector<std::vector<int>>& loops, PlaneLabel label,
                        const std::string& semantic, std::optional<int> parent_wall) {
  std::vector<int> line_ids;
  for (const auto& loop : loops) {
    for (std::size_t k = 0; k < loop.size(); ++k) {
      line_ids.push_back(line(loop[k], loop[(k + 1) % loop.size()]));
    }
  }
  // Newell normal of the outer loop.
  const auto& outer = loops.front();
  Vec3 n = Vec3::Zero();
  Vec3 centroid = Vec3::Zero();
  for (std::size_t k = 0; k < outer.size(); ++k) {
    const Vec3& a = position(outer[k]);
    const Vec3& b = position(outer[(k + 1) % outer.size()]);
    n += Vec3((a.y() - b.y()) * (a.z() + b.z()), (a.z() - b.z()) * (a.x() + b.x()),
              (a.x() - b.x()) * (a.y() + b.y()));
    centroid += a;
  }
  n.normalize();
  centroid /= static_cast<double>(outer.size());

  const int id = static_cast<int>(planes_.size());
  json p = {{"id", id},
            {"lines", line_ids},
            {"normal", {n.x(), n.y(), n.z()}},
            {"offset", -n.dot(centroid)},
            {"label", std::string(to_string(label))},
            {"semantic", semantic}};
  p["parent_wall"] = parent_wall ? json(*parent_wall) : json(nullptr);
  planes_.push_back(std::move(p));
  return id;
}

json SceneBuilder::to_json() const {
  json junctions = json::array();
  for (std::size_t i = 0; i < junctions_.size(); ++i) {
    const Vec3& p = junctions_[i];
    junctions.push_back({{"id", i}, {"xyz", {p.x(), p.y(), p.z()}}});
  }
  json lines = json::array();
  for (std::size_t i = 0; i < lines_.size(); ++i) {
    lines.push_back({{"id", i}, {"junctions", {lines_[i].first, lines_[i].second}}});
  }
  return {{"scene_id", scene_id_}, {"junctions", junctions}, {"lines", lines}, {"planes", planes_}};
}

namespace {

// Rectangular hole on a vertical wall face: horizontal extent [a, b] along
// the wall, vertical extent [z0, z1].
struct Hole {
  double a = 0.0;
  double b = 0.0;
  double z0 = 0.0;
  double z1 = 0.0;
  PlaneLabel kind = PlaneLabel::door;
  bool open = false;
};

// Wall face from `p` to `q` (floor level) with holes. Returns the wall plane
// id and records door open flags in `out`.
int add_wall(SceneBuilder& b, int p_lo, int q_lo, int q_hi, int p_hi, const std::vector<Hole>& holes,
             SynthScene& out, const std::string& semantic) {
  const Vec3 p = b.position(p_lo);
  const Vec3 q = b.position(q_lo);
  const Vec3 dir = (q - p).normalized();
  std::vector<std::vector<int>> loops{{p_lo, q_lo, q_hi, p_hi}};
  std::vector<std::vector<int>> hole_loops;
  for (const auto& h : holes) {
    const Vec3 a = p + h.a * dir;
    const Vec3 c = p + h.b * dir;
    std::vector<int> loop{b.junction({a.x(), a.y(), p.z() + h.z0}),
                          b.junction({c.x(), c.y(), p.z() + h.z0}),
                          b.junction({c.x(), c.y(), p.z() + h.z1}),
                          b.junction({a.x(), a.y(), p.z() + h.z1})};
    loops.push_back(loop);
    hole_loops.push_back(loop);
  }
  const int wall = b.plane(loops, PlaneLabel::wall, semantic);
  for (std::size_t k = 0; k < holes.size(); ++k) {
    const int id = b.plane({hole_loops[k]}, holes[k].kind, semantic, wall);
    if (holes[k].kind == PlaneLabel::door) out.door_open[id] = holes[k].open;
  }
  return wall;
}

void add_room(SceneBuilder& b, const Box& box, const std::vector<std::vector<Hole>>& wall_holes,
              SynthScene& out, const std::string& semantic) {
  const Vec3& lo = box.lo;
  const Vec3& hi = box.hi;
  // Floor corners counter-clockwise seen from above, then the ceiling ones.
  const int f0 = b.junction({lo.x(), lo.y(), lo.z()});
  const int f1 = b.junction({hi.x(), lo.y(), lo.z()});
  const int f2 = b.junction({hi.x(), hi.y(), lo.z()});
  const int f3 = b.junction({lo.x(), hi.y(), lo.z()});
  const int c0 = b.junction({lo.x(), lo.y(), hi.z()});
  const int c1 = b.junction({hi.x(), lo.y(), hi.z()});
  const int c2 = b.junction({hi.x(), hi.y(), hi.z()});
  const int c3 = b.junction({lo.x(), hi.y(), hi.z()});
  b.plane({{f0, f3, f2, f1}}, PlaneLabel::floor, semantic);
  b.plane({{c0, c1, c2, c3}}, PlaneLabel::ceiling, semantic);
  // Walls in order -y, +x, +y, -x.
  add_wall(b, f0, f1, c1, c0, wall_holes[0], out, semantic);
  add_wall(b, f1, f2, c2, c1, wall_holes[1], out, semantic);
  add_wall(b, f2, f3, c3, c2, wall_holes[2], out, semantic);
  add_wall(b, f3, f0, c0, c3, wall_holes[3], out, semantic);
  out.rooms.push_back(box);
}

}  // namespace

SynthScene make_rooms(const std::string& scene_id, const RoomsOptions& o, std::uint64_t seed) {
  Rng rng(seed);
  SynthScene out;
  SceneBuilder b(scene_id);
  const int columns = std::max(1, o.columns);
  static const char* kSemantics[] = {"living room", "bedroom", "kitchen", "bathroom", "study"};
  bool pending_open = false;
  for (int r = 0; r < o.rooms; ++r) {
    const int col = r % columns;
    const int row = r / columns;
    const Vec3 lo(col * (o.width + o.wall_gap), row * (o.depth + o.wall_gap), 0.0);
    const Box box{lo, lo + Vec3(o.width, o.depth, o.height)};
    std::vector<std::vector<Hole>> holes(4);
    const bool right_neighbour = col + 1 < columns && r + 1 < o.rooms;
    const bool left_neighbour = col > 0;
    // A door pierces the +x wall of room r and the -x wall of room r + 1.
    // The -x wall runs from +y to -y, so its offsets are mirrored.
    const double door_a = 0.5 * o.depth - 450.0;
    const double door_b = 0.5 * o.depth + 450.0;
    const bool inherited = pending_open;
    if (right_neighbour) {
      pending_open = rng.uniform() < o.open_probability;
      holes[1].push_back({door_a, door_b, 20.0, 2020.0, PlaneLabel::door, pending_open});
    }
    if (left_neighbour) {
      holes[3].push_back(
          {o.depth - door_b, o.depth - door_a, 20.0, 2020.0, PlaneLabel::door, inherited});
    }
    if (o.exterior_doors && r + columns >= o.rooms) {
      holes[2].push_back({600.0, 1500.0, 20.0, 2020.0, PlaneLabel::door,
                          rng.uniform() < o.open_probability});
    }
    if (o.windows && row == 0) {
      const double a = rng.uniform(300.0, o.width - 1600.0);
      holes[0].push_back({a, a + 1200.0, 900.0, 2100.0, PlaneLabel::window, false});
    }
    add_room(b, box, holes, out, kSemantics[r % 5]);
  }
  out.json = b.to_json();
  out.scene = parse_scene(out.json);
  return out;
}

SynthScene make_occluder_scene(const std::string& scene_id, int panels, std::uint64_t seed) {
  Rng rng(seed);
  SynthScene out;
  SceneBuilder b(scene_id);
  const Box room{Vec3::Zero(), Vec3(6000.0, 6000.0, 3000.0)};
  std::vector<std::vector<Hole>> holes(4);
  holes[0].push_back({2000.0, 3500.0, 800.0, 2200.0, PlaneLabel::window, false});
  holes[1].push_back({rng.uniform(500.0, 4000.0), 0.0, 20.0, 2020.0, PlaneLabel::door,
                      rng.uniform() < 0.5});
  holes[1].back().b = holes[1].back().a + 900.0;
  add_room(b, room, holes, out, "room");

  for (int k = 0; k < panels; ++k) {
    const double half = rng.uniform(300.0, 1000.0);
    const double margin = half + 200.0;
    const Vec3 c(rng.uniform(margin, 6000.0 - margin), rng.uniform(margin, 6000.0 - margin),
                 rng.uniform(600.0, 2000.0));
    const bool horizontal = rng.uniform() < 0.25;
    std::vector<Vec3> corners;
    Vec3 axis_a;
    Vec3 axis_b;
    if (horizontal) {
      const double yaw = rng.uniform(0.0, std::numbers::pi);
      axis_a = Vec3(std::cos(yaw), std::sin(yaw), 0.0) * half;
      axis_b = Vec3(-std::sin(yaw), std::cos(yaw), 0.0) * rng.uniform(300.0, half);
    } else {
      const double yaw = rng.uniform(0.0, std::numbers::pi);
      axis_a = Vec3(std::cos(yaw), std::sin(yaw), 0.0) * half;
      axis_b = Vec3(0.0, 0.0, std::min(rng.uniform(300.0, 900.0), c.z() - 50.0));
    }
    const std::vector<int> loop{b.junction(c - axis_a - axis_b), b.junction(c + axis_a - axis_b),
                                b.junction(c + axis_a + axis_b), b.junction(c - axis_a + axis_b)};
    const PlaneLabel label = horizontal ? PlaneLabel::floor : PlaneLabel::wall;
    // Floor-window lines have no label, so only upright panels get windows.
    const bool pierced = rng.uniform() < 0.3 && !horizontal;
    if (pierced) {
      const double s = rng.uniform(0.2, 0.5);
      const Vec3 dc = axis_a * rng.uniform(-0.3, 0.3);
      const std::vector<int> hole{
          b.junction(c + dc - s * axis_a - s * axis_b), b.junction(c + dc + s * axis_a - s * axis_b),
          b.junction(c + dc + s * axis_a + s * axis_b), b.junction(c + dc - s * axis_a + s * axis_b)};
      const int panel = b.plane({loop, hole}, label, "panel");
      b.plane({hole}, PlaneLabel::window, "panel", panel);
    } else {
      b.plane({loop}, label, "panel");
    }
  }
  out.json = b.to_json();
  out.scene = parse_scene(out.json);
  return out;
}

std::vector<CameraView> random_views(const SynthScene& scene, int count, int width, int height,
                                     std::uint64_t seed) {
  Rng rng(seed);
  std::vector<CameraView> views;
  for (int i = 0; i < count; ++i) {
    const Box& room = scene.rooms[static_cast<std::size_t>(rng.index(static_cast<int>(scene.rooms.size())))];
    const Vec3 c(rng.uniform(room.lo.x() + 400.0, room.hi.x() - 400.0),
                 rng.uniform(room.lo.y() + 400.0, room.hi.y() - 400.0),
                 rng.uniform(1200.0, std::min(1700.0, room.hi.z() - 300.0)));
    const double yaw = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const double pitch = rng.uniform(-0.3, 0.3);
    const Vec3 f(std::cos(pitch) * std::cos(yaw), std::cos(pitch) * std::sin(yaw), std::sin(pitch));
    const Vec3 right = f.cross(Vec3::UnitZ()).normalized();
    const Vec3 down = f.cross(right);
    CameraView v;
    char name[32];
    std::snprintf(name, sizeof(name), "view_%03d", i);
    v.view_id = name;
    v.width = width;
    v.height = height;
    const double focal = 0.5 * width / std::tan(0.5 * rng.uniform(1.0, 1.6));
    v.K = {focal, focal, 0.5 * width, 0.5 * height};
    v.world_to_camera.R.row(0) = right;
    v.world_to_camera.R.row(1) = down;
    v.world_to_camera.R.row(2) = f;
    v.world_to_camera.t = -(v.world_to_camera.R * c);
    views.push_back(v);
  }
  return views;
}

namespace {

struct RenderPlane {
  PlaneParams plane;
  PlaneFrame frame;
  Region2D region;
  std::uint8_t id = 0;
};

std::uint8_t class_id(PlaneLabel label) {
  switch (label) {
    case PlaneLabel::wall: return 1;
    case PlaneLabel::floor: return 2;
    case PlaneLabel::ceiling: return 3;
    case PlaneLabel::door: return 7;
    case PlaneLabel::window: return 8;
  }
  return 0;
}

}  // namespace

std::vector<std::uint8_t> render_mask(const SynthScene& s, const CameraView& view) {
  const SceneGraph& scene = s.scene;
  std::vector<RenderPlane> planes;
  for (const auto& p : scene.planes) {
    if (p.is_opening() && p.label == PlaneLabel::door) {
      auto it = s.door_open.find(p.plane_id);
      if (it != s.door_open.end() && it->second) continue;
    }
    const auto outer = scene.loop_positions(p.outer_boundary);
    RenderPlane rp{p.params, PlaneFrame::on_plane(p.params, outer.front()), {}, class_id(p.label)};
    for (const auto& q : outer) rp.region.outer.push_back(rp.frame.to_2d(q));
    for (const auto& op : p.openings) {
      Polygon2D hole;
      for (const auto& q : scene.loop_positions(op.loop)) hole.push_back(rp.frame.to_2d(q));
      rp.region.holes.push_back(std::move(hole));
    }
    planes.push_back(std::move(rp));
  }

  const Mat3 Rt = view.world_to_camera.R.transpose();
  const Vec3 origin = -(Rt * view.world_to_camera.t);
  std::vector<std::uint8_t> out(static_cast<std::size_t>(view.width) * view.height, 0);
  for (int y = 0; y < view.height; ++y) {
    for (int x = 0; x < view.width; ++x) {
      const Vec3 ray_cam((x - view.K.cx) / view.K.fx, (y - view.K.cy) / view.K.fy, 1.0);
      const Vec3 dir = Rt * ray_cam;
      double best = std::numeric_limits<double>::infinity();
      std::uint8_t id = 0;
      for (const auto& rp : planes) {
        const double denom = rp.plane.normal().dot(dir);
        if (std::abs(denom) < 1e-12) continue;
        const double s_hit = -rp.plane.signed_distance(origin) / denom;
        if (!(s_hit > 0.0) || s_hit >= best) continue;
        if (!rp.region.contains(rp.frame.to_2d(origin + s_hit * dir), 1e-9)) continue;
        best = s_hit;
        id = rp.id;
      }
      out[static_cast<std::size_t>(y) * view.width + x] = id;
    }
  }
  return out;
}

json label_map_json() {
  return {{"1", "wall"}, {"2", "floor"}, {"3", "ceiling"}, {"7", "door"}, {"8", "window"}};
}

namespace {

void write_text(const std::filesystem::path& path, const json& doc) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

}  // namespace

void write_scene_dir(const std::filesystem::path& dir, const SynthScene& scene,
                     const std::vector<CameraView>& views, bool masks) {
  write_text(dir / "scene.json", scene.json);
  for (auto view : views) {
    if (masks) {
      view.mask_path = "../masks/" + view.view_id + ".png";
      std::filesystem::create_directories(dir / "masks");
      write_gray_png((dir / "masks" / (view.view_id + ".png")).string(),
                     {view.width, view.height, render_mask(scene, view)});
    }
    write_text(dir / "views" / (view.view_id + ".json"), view_to_json(view));
  }
}

void write_corpus(const std::filesystem::path& root, int scenes, int views, int width, int height,
                  std::uint64_t seed) {
  write_text(root / "label_map.json", label_map_json());
  for (int i = 0; i < scenes; ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "scene_%05d", i);
    RoomsOptions o;
    o.rooms = 1 + i % 3;
    o.columns = 3;
    const std::uint64_t scene_seed = seed * 1000003ULL + static_cast<std::uint64_t>(i);
    const SynthScene s = make_rooms(name, o, scene_seed);
    write_scene_dir(root / name, s, random_views(s, views, width, height, scene_seed + 17), true);
  }
}

}  // namespace srw::synth
