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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "srw/config.hpp"
#include "srw/ingest.hpp"
#include "srw/scene.hpp"

namespace srw {

enum class DoorState { open, closed };

std::string_view to_string(DoorState state);

struct DoorStateReport {
  int door_id = 0;
  std::optional<double> closed_ratio;  // empty when no sample was visible
  int visible_samples = 0;
  int door_hits = 0;
  DoorState state = DoorState::closed;

  bool operator==(const DoorStateReport&) const = default;
};

/// Stable per-task seed from the run seed, scene id and door id.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view scene_id, int door_id);

/// `n` points uniformly distributed over the planar polygon `loop`, drawn by
/// rejection sampling over its bounding box in the plane frame. The output
/// only depends on (loop, plane, n, seed). Throws DegeneratePolygon for
/// loops with area below 1e-6 mm^2.
std::vector<Vec3> sample_polygon_uniform(std::span<const Vec3> loop, const PlaneParams& plane,
                                         int n, std::uint64_t seed);

/// A view together with its semantic mask.
struct MaskedView {
  const CameraView* view = nullptr;
  const SemanticMask* mask = nullptr;
};

/// Door closed ratio: the fraction of in-image projections of `samples`
/// that land on door pixels, pooled over all views. A sample counts for a
/// view when it is in front of the camera and its rounded pixel lies inside
/// the image. Closed when the ratio exceeds `closed_threshold` or when no
/// sample was counted. Throws DimensionMismatch.
DoorStateReport door_closed_ratio(int door_id, std::span<const Vec3> samples,
                                  std::span<const MaskedView> views,
                                  double closed_threshold = 0.3,
                                  const Tolerances& tol = default_tolerances());

/// Runs sampling and the ratio test for every door opening of the scene,
/// ordered by door id.
std::vector<DoorStateReport> compute_door_states(const SceneGraph& scene,
                                                 std::span<const MaskedView> views,
                                                 std::uint64_t seed,
                                                 const Thresholds& thresholds = {});

nlohmann::json door_report_to_json(const DoorStateReport& report);

}  // namespace srw
