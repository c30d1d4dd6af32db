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

// Per-view visible line segments with occlusion by plane polygons.
//
// Every scene line is handled as a set of parameter intervals along its 3D
// segment (t = 0 at the first junction, t = 1 at the second). Frustum
// clipping produces the initial interval; each occluding plane then splits
// the current intervals into the part on the camera side of the plane and
// the part behind it, and removes whatever portion of the latter is hidden
// by the plane's polygon when seen from the camera.

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "srw/config.hpp"
#include "srw/doors.hpp"
#include "srw/geometry.hpp"
#include "srw/ingest.hpp"
#include "srw/polygon.hpp"
#include "srw/scene.hpp"

namespace srw {

struct ParamInterval {
  double lo = 0.0;
  double hi = 1.0;

  double length() const { return hi - lo; }
  bool operator==(const ParamInterval&) const = default;
};

/// Sorts, merges intervals separated by gaps below `gap` and drops the ones
/// shorter than `gap`.
std::vector<ParamInterval> merge_intervals(std::vector<ParamInterval> intervals, double gap);

/// The part of a structural plane that blocks the view: the outer polygon
/// minus windows and open doors. World frame.
struct OccluderRegion {
  int plane_id = 0;
  PlaneParams plane;
  PlaneFrame frame;
  Region2D region;
  std::vector<int> subtracted_openings;  // door / window plane ids
};

/// Wall, floor and ceiling planes become occluders; closed (or unknown) doors
/// stay part of their wall. Opening planes never occlude on their own.
/// Sorted by plane id.
std::vector<OccluderRegion> occluder_regions(const SceneGraph& scene,
                                             std::span<const DoorStateReport> door_states);

/// a = -d / (p . n): where the viewing ray through camera-frame point `p`
/// meets the plane, as a multiple of p. 0 < a < 1 means the plane lies
/// between camera and point.
double occlusion_parameter(const Vec3& p, const PlaneParams& plane_cam);

/// Maximal sub-interval of the camera-frame segment p1 -> p2 in front of
/// the near plane and projecting inside [0, width] x [0, height].
std::optional<ParamInterval> clip_to_frustum(const Vec3& p1, const Vec3& p2, const Intrinsics& K,
                                             int width, int height,
                                             const Tolerances& tol = default_tolerances());

struct PlaneSplit {
  std::vector<ParamInterval> front;
  std::vector<ParamInterval> behind;
};

/// Splits `interval` of p1 -> p2 (camera frame) into the parts on the
/// camera side of `plane_cam` and behind it. Pieces that stay within
/// tol.plane of the plane count as front, so a plane never hides its own
/// lines.
PlaneSplit split_by_plane(const ParamInterval& interval, const Vec3& p1, const Vec3& p2,
                          const PlaneParams& plane_cam,
                          const Tolerances& tol = default_tolerances());

/// Removes from a `behind` interval the part whose viewing rays pass
/// through `region`. `frame_cam` and `plane_cam` are the region's frame and
/// plane in camera coordinates.
std::vector<ParamInterval> occlude_by_region(const ParamInterval& behind, const Vec3& p1,
                                             const Vec3& p2, const PlaneParams& plane_cam,
                                             const PlaneFrame& frame_cam, const Region2D& region,
                                             const Tolerances& tol = default_tolerances());

struct LineVisibility {
  int line_id = 0;
  Vec3 p1_cam = Vec3::Zero();
  Vec3 p2_cam = Vec3::Zero();
  std::vector<ParamInterval> intervals;
};

/// Visible intervals of every scene line that survives frustum clipping,
/// ordered by line id. Occluders are applied in plane id order and the
/// planes adjacent to a line are skipped for that line.
std::vector<LineVisibility> visible_intervals(const SceneGraph& scene, const CameraView& view,
                                              std::span<const OccluderRegion> occluders,
                                              const Tolerances& tol = default_tolerances());

struct AnnotatedJunction {
  Vec2 position = Vec2::Zero();  // pixels
  JunctionLabel label = JunctionLabel::false_;
};

struct AnnotatedSegment {
  int j1 = 0;
  int j2 = 0;
  LineLabel label = LineLabel::wall;
  int source_line = -1;  // not serialized
};

struct AnnotatedView {
  std::string view_id;
  int width = 0;
  int height = 0;
  std::vector<AnnotatedJunction> junctions;
  std::vector<AnnotatedSegment> segments;
};

/// Ground-truth wireframe of one view. Interval endpoints at t = 0 or 1 are
/// scene junctions (`proper`); endpoints created by clipping or occlusion
/// are `false`. Endpoints closer than tol.pixel share a junction and
/// segments shorter than tol.pixel are dropped.
AnnotatedView visible_segments(const SceneGraph& scene, const CameraView& view,
                               std::span<const OccluderRegion> occluders,
                               const Tolerances& tol = default_tolerances());

AnnotatedView visible_segments(const SceneGraph& scene, const CameraView& view,
                               std::span<const DoorStateReport> door_states,
                               const Tolerances& tol = default_tolerances());

}  // namespace srw
