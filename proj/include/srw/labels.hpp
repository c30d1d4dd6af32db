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

#include <array>
#include <string>
#include <string_view>

namespace srw {

enum class PlaneLabel { wall, floor, ceiling, door, window };

// Ordering matches the prediction file schema: invalid first, then the
// five semantic labels.
enum class LineLabel { invalid, wall, floor, ceiling, door, window };

enum class JunctionLabel { invalid, false_, proper };

inline constexpr std::array<PlaneLabel, 5> kPlaneLabels{
    PlaneLabel::wall, PlaneLabel::floor, PlaneLabel::ceiling, PlaneLabel::door,
    PlaneLabel::window};

inline constexpr std::array<LineLabel, 6> kLineLabels{
    LineLabel::invalid, LineLabel::wall,  LineLabel::floor,
    LineLabel::ceiling, LineLabel::door, LineLabel::window};

/// Labels that ground truth can carry (no `invalid`).
inline constexpr std::array<LineLabel, 5> kSemanticLineLabels{
    LineLabel::wall, LineLabel::floor, LineLabel::ceiling, LineLabel::door,
    LineLabel::window};

inline constexpr std::array<JunctionLabel, 3> kJunctionLabels{
    JunctionLabel::invalid, JunctionLabel::false_, JunctionLabel::proper};

inline constexpr std::array<JunctionLabel, 2> kSemanticJunctionLabels{
    JunctionLabel::false_, JunctionLabel::proper};

std::string_view to_string(PlaneLabel label);
std::string_view to_string(LineLabel label);
std::string_view to_string(JunctionLabel label);

// Throw ParseError on unknown names.
PlaneLabel plane_label_from_string(std::string_view name);
LineLabel line_label_from_string(std::string_view name);
JunctionLabel junction_label_from_string(std::string_view name);

/// Symmetric plane-pair to line-label table. door-door and window-window
/// are merged into door and window. Pairs outside the table throw
/// UnmappedPair.
LineLabel line_label_from_planes(PlaneLabel a, PlaneLabel b);

inline constexpr int index_of(LineLabel label) { return static_cast<int>(label); }
inline constexpr int index_of(JunctionLabel label) { return static_cast<int>(label); }

}  // namespace srw
