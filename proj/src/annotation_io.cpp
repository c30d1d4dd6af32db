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

#include "srw/annotation_io.hpp"

#include <fstream>

#include "srw/error.hpp"

namespace srw {

using nlohmann::json;

json annotation_to_json(const AnnotatedView& view) {
  json junctions = json::array();
  for (const auto& j : view.junctions) {
    junctions.push_back({{"xy", {j.position.x(), j.position.y()}},
                         {"label", std::string(to_string(j.label))}});
  }
  json segments = json::array();
  for (const auto& s : view.segments) {
    segments.push_back({{"junctions", {s.j1, s.j2}}, {"label", std::string(to_string(s.label))}});
  }
  return {{"view_id", view.view_id},
          {"width", view.width},
          {"height", view.height},
          {"junctions", std::move(junctions)},
          {"segments", std::move(segments)}};
}

AnnotatedView parse_annotation(const json& doc) {
  AnnotatedView view;
  try {
    view.view_id = doc.at("view_id").get<std::string>();
    view.width = doc.at("width").get<int>();
    view.height = doc.at("height").get<int>();
    for (const auto& j : doc.at("junctions")) {
      const auto xy = j.at("xy").get<std::vector<double>>();
      if (xy.size() != 2) throw ParseError("junction xy needs 2 numbers");
      const auto label = junction_label_from_string(j.at("label").get<std::string>());
      view.junctions.push_back({Vec2(xy[0], xy[1]), label});
    }
    for (const auto& s : doc.at("segments")) {
      const auto ends = s.at("junctions").get<std::vector<int>>();
      if (ends.size() != 2) throw ParseError("segment needs 2 junction indices");
      for (int e : ends) {
        if (e < 0 || e >= static_cast<int>(view.junctions.size())) {
          throw ParseError("segment junction index " + std::to_string(e) + " out of range");
        }
      }
      if (ends[0] == ends[1]) throw ParseError("segment joins a junction to itself");
      const auto label = line_label_from_string(s.at("label").get<std::string>());
      if (label == LineLabel::invalid) throw ParseError("annotated segment labelled invalid");
      view.segments.push_back({ends[0], ends[1], label, -1});
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("annotation: ") + e.what());
  }
  return view;
}

AnnotatedView load_annotation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return parse_annotation(json::parse(in));
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void save_annotation(const std::string& path, const AnnotatedView& view) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << annotation_to_json(view).dump(1) << '\n';
}

}  // namespace srw
