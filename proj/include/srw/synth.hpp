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

// Synthetic scenes for tests, benchmarks and the bundled corpus: box rooms
// with doors and windows, free-standing occluder panels, random cameras and
// ray-cast semantic masks.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "srw/geometry.hpp"
#include "srw/ingest.hpp"
#include "srw/labels.hpp"
#include "srw/scene.hpp"

namespace srw::synth {

/// Deterministic uniform doubles on top of mt19937_64.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int index(int n) { return static_cast<int>(uniform() * n) % n; }

 private:
  std::mt19937_64 gen_;
};

/// Assembles scene-file JSON. Ids are handed out sequentially from 0; lines
/// are shared between planes that use the same junction pair.
class SceneBuilder {
 public:
  explicit SceneBuilder(std::string scene_id) : scene_id_(std::move(scene_id)) {}

  int junction(const Vec3& p);
  int line(int a, int b);

  /// loops[0] is the outer boundary. The plane's normal and offset come
  /// from the outer loop.
  int plane(const std::vector<std::vector<int>>& loops, PlaneLabel label,
            const std::string& semantic, std::optional<int> parent_wall = std::nullopt);

  const Vec3& position(int id) const { return junctions_[static_cast<std::size_t>(id)]; }
  nlohmann::json to_json() const;

 private:
  std::string scene_id_;
  std::vector<Vec3> junctions_;
  std::vector<std::pair<int, int>> lines_;
  std::map<std::pair<int, int>, int> line_ids_;
  nlohmann::json planes_ = nlohmann::json::array();
};

struct Box {
  Vec3 lo = Vec3::Zero();
  Vec3 hi = Vec3::Zero();
};

struct SynthScene {
  nlohmann::json json;
  SceneGraph scene;
  std::vector<Box> rooms;
  std::map<int, bool> door_open;  // door plane id -> open
};

struct RoomsOptions {
  int rooms = 1;
  int columns = 5;  // rooms per row
  double width = 4000.0;
  double depth = 5000.0;
  double height = 2800.0;
  double wall_gap = 100.0;  // wall thickness between neighbouring rooms
  bool windows = true;
  bool exterior_doors = true;
  double open_probability = 0.5;
};

/// Grid of box rooms. Neighbours in a row share a door through both wall
/// faces; rooms with an exterior -y wall get a window and rooms with an
/// exterior +y wall get a door.
SynthScene make_rooms(const std::string& scene_id, const RoomsOptions& options, std::uint64_t seed);

/// One box room with `panels` random free-standing rectangles, some
/// horizontal, some with a window hole.
SynthScene make_occluder_scene(const std::string& scene_id, int panels, std::uint64_t seed);

/// Cameras inside the scene's rooms looking roughly horizontally.
std::vector<CameraView> random_views(const SynthScene& scene, int count, int width, int height,
                                     std::uint64_t seed);

/// Ray-cast class ids (1 wall, 2 floor, 3 ceiling, 7 door, 8 window, 0
/// none) sampled at integer pixel positions. Open doors are transparent.
std::vector<std::uint8_t> render_mask(const SynthScene& scene, const CameraView& view);

/// {"1":"wall","2":"floor","3":"ceiling","7":"door","8":"window"}
nlohmann::json label_map_json();

/// Writes dir/scene.json and dir/views/<view_id>.json, plus rendered
/// dir/masks/<view_id>.png when `masks` is set.
void write_scene_dir(const std::filesystem::path& dir, const SynthScene& scene,
                     const std::vector<CameraView>& views, bool masks);

/// Corpus of `scenes` scenes of 1 to 3 rooms with `views` masked views each
/// and a shared label_map.json at the root.
void write_corpus(const std::filesystem::path& root, int scenes, int views, int width, int height,
                  std::uint64_t seed);

}  // namespace srw::synth
