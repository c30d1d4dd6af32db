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

#include "srw/labels.hpp"

#include <string>
#include <utility>

#include "srw/error.hpp"

namespace srw {

std::string_view to_string(PlaneLabel label) {
  switch (label) {
    case PlaneLabel::wall: return "wall";
    case PlaneLabel::floor: return "floor";
    case PlaneLabel::ceiling: return "ceiling";
    case PlaneLabel::door: return "door";
    case PlaneLabel::window: return "window";
  }
  return "?";
}

std::string_view to_string(LineLabel label) {
  switch (label) {
    case LineLabel::invalid: return "invalid";
    case LineLabel::wall: return "wall";
    case LineLabel::floor: return "floor";
    case LineLabel::ceiling: return "ceiling";
    case LineLabel::door: return "door";
    case LineLabel::window: return "window";
  }
  return "?";
}

std::string_view to_string(JunctionLabel label) {
  switch (label) {
    case JunctionLabel::invalid: return "invalid";
    case JunctionLabel::false_: return "false";
    case JunctionLabel::proper: return "proper";
  }
  return "?";
}

PlaneLabel plane_label_from_string(std::string_view name) {
  for (auto label : kPlaneLabels) {
    if (to_string(label) == name) return label;
  }
  throw ParseError("unknown plane label '" + std::string(name) + "'");
}

LineLabel line_label_from_string(std::string_view name) {
  for (auto label : kLineLabels) {
    if (to_string(label) == name) return label;
  }
  throw ParseError("unknown line label '" + std::string(name) + "'");
}

JunctionLabel junction_label_from_string(std::string_view name) {
  for (auto label : kJunctionLabels) {
    if (to_string(label) == name) return label;
  }
  throw ParseError("unknown junction label '" + std::string(name) + "'");
}

LineLabel line_label_from_planes(PlaneLabel a, PlaneLabel b) {
  if (b != PlaneLabel::wall && a == PlaneLabel::wall) std::swap(a, b);
  // Now either b == wall, or neither is a wall.
  if (b == PlaneLabel::wall) {
    switch (a) {
      case PlaneLabel::wall: return LineLabel::wall;
      case PlaneLabel::floor: return LineLabel::floor;
      case PlaneLabel::ceiling: return LineLabel::ceiling;
      case PlaneLabel::door: return LineLabel::door;
      case PlaneLabel::window: return LineLabel::window;
    }
  }
  if (a == b && a == PlaneLabel::door) return LineLabel::door;
  if (a == b && a == PlaneLabel::window) return LineLabel::window;
  throw UnmappedPair(std::string(to_string(a)) + "-" + std::string(to_string(b)));
}

}  // namespace srw
