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

// Writes a synthetic scene corpus, or a single scene, in the layout `srw`
// reads.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "srw/error.hpp"
#include "srw/synth.hpp"

int main(int argc, char** argv) {
  std::string output;
  int scenes = 10;
  int views = 3;
  int width = 320;
  int height = 240;
  std::uint64_t seed = 1;
  std::string scene_id;
  int rooms = 1;
  CLI::App app{"Synthetic corpus generator"};
  app.add_option("--output", output, "Corpus root")->required();
  app.add_option("--scenes", scenes, "Number of scenes");
  app.add_option("--views", views, "Views per scene");
  app.add_option("--width", width, "Image width");
  app.add_option("--height", height, "Image height");
  app.add_option("--seed", seed, "Generator seed");
  app.add_option("--scene-id", scene_id, "Write one scene directory with this id instead");
  app.add_option("--rooms", rooms, "Rooms in the single scene");
  CLI11_PARSE(app, argc, argv);
  try {
    if (scene_id.empty()) {
      srw::synth::write_corpus(output, scenes, views, width, height, seed);
    } else {
      srw::synth::RoomsOptions o;
      o.rooms = rooms;
      o.columns = 3;
      const auto scene = srw::synth::make_rooms(scene_id, o, seed);
      const std::filesystem::path dir = std::filesystem::path(output) / scene_id;
      srw::synth::write_scene_dir(dir, scene, srw::synth::random_views(scene, views, width, height, seed + 17),
                                  true);
      std::ofstream(dir / "label_map.json") << srw::synth::label_map_json().dump(2) << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "make_corpus: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
