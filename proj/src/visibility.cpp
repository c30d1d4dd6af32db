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

#include "srw/visibility.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>

namespace srw {

namespace {

Vec3 lerp(const Vec3& a, const Vec3& b, double t) { return a + t * (b - a); }

// Complement of sorted, disjoint `cut` within [lo, hi].
std::vector<ParamInterval> subtract(const ParamInterval& whole,
                                    const std::vector<ParamInterval>& cut) {
  std::vector<ParamInterval> out;
  double cursor = whole.lo;
  for (const auto& c : cut) {
    if (c.lo > cursor) out.push_back({cursor, std::min(c.lo, whole.hi)});
    cursor = std::max(cursor, c.hi);
    if (cursor >= whole.hi) break;
  }
  if (cursor < whole.hi) out.push_back({cursor, whole.hi});
  return out;
}

}  // namespace

std::vector<ParamInterval> merge_intervals(std::vector<ParamInterval> intervals, double gap) {
  std::sort(intervals.begin(), intervals.end(),
            [](const auto& a, const auto& b) { return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi); });
  std::vector<ParamInterval> merged;
  for (const auto& iv : intervals) {
    if (!merged.empty() && iv.lo - merged.back().hi < gap) {
      merged.back().hi = std::max(merged.back().hi, iv.hi);
    } else {
      merged.push_back(iv);
    }
  }
  std::erase_if(merged, [gap](const ParamInterval& iv) { return iv.length() < gap; });
  return merged;
}

std::vector<OccluderRegion> occluder_regions(const SceneGraph& scene,
                                             std::span<const DoorStateReport> door_states) {
  std::map<int, DoorState> states;
  for (const auto& r : door_states) states[r.door_id] = r.state;

  std::vector<OccluderRegion> out;
  for (const auto& plane : scene.planes) {
    if (plane.is_opening()) continue;
    if (plane.label != PlaneLabel::wall && plane.label != PlaneLabel::floor &&
        plane.label != PlaneLabel::ceiling) {
      continue;
    }
    if (plane.outer_boundary.size() < 3) continue;
    OccluderRegion occ;
    occ.plane_id = plane.plane_id;
    occ.plane = plane.params;
    occ.frame = PlaneFrame::on_plane(plane.params, scene.position(plane.outer_boundary[0]));
    for (const auto& p : scene.loop_positions(plane.outer_boundary)) {
      occ.region.outer.push_back(occ.frame.to_2d(p));
    }
    for (const auto& op : plane.openings) {
      bool subtract_hole = op.kind == OpeningKind::window;
      if (op.kind == OpeningKind::door) {
        auto it = states.find(op.door_id);
        subtract_hole = it != states.end() && it->second == DoorState::open;
      }
      if (!subtract_hole) continue;
      Polygon2D hole;
      for (const auto& p : scene.loop_positions(op.loop)) hole.push_back(occ.frame.to_2d(p));
      occ.region.holes.push_back(std::move(hole));
      occ.subtracted_openings.push_back(op.door_id);
    }
    out.push_back(std::move(occ));
  }
  return out;
}

double occlusion_parameter(const Vec3& p, const PlaneParams& plane_cam) {
  return -plane_cam.offset() / p.dot(plane_cam.normal());
}

std::optional<ParamInterval> clip_to_frustum(const Vec3& p1, const Vec3& p2, const Intrinsics& K,
                                             int width, int height, const Tolerances& tol) {
  // Each constraint is a half-space through the camera centre (or the near
  // plane), so it is linear along the segment.
  const auto constraints = [&](const Vec3& p) {
    return std::array<double, 5>{
        p.z() - tol.z_min,
        K.fx * p.x() + K.cx * p.z(),
        (width - K.cx) * p.z() - K.fx * p.x(),
        K.fy * p.y() + K.cy * p.z(),
        (height - K.cy) * p.z() - K.fy * p.y(),
    };
  };
  const auto g1 = constraints(p1);
  const auto g2 = constraints(p2);
  double lo = 0.0;
  double hi = 1.0;
  for (std::size_t k = 0; k < g1.size(); ++k) {
    const double a = g1[k];
    const double b = g2[k];
    if (a >= 0.0 && b >= 0.0) continue;
    if (a < 0.0 && b < 0.0) return std::nullopt;
    const double t = a / (a - b);
    if (a < 0.0) {
      lo = std::max(lo, t);
    } else {
      hi = std::min(hi, t);
    }
  }
  if (!(hi - lo >= tol.param)) return std::nullopt;
  return ParamInterval{lo, hi};
}

PlaneSplit split_by_plane(const ParamInterval& interval, const Vec3& p1, const Vec3& p2,
                          const PlaneParams& plane_cam, const Tolerances& tol) {
  PlaneSplit out;
  const double d = plane_cam.offset();
  // A plane through the camera centre is seen edge-on and hides nothing.
  if (std::abs(d) <= tol.plane) {
    out.front.push_back(interval);
    return out;
  }
  // Signed distance, positive on the camera's side; the ray parameter a of
  // each endpoint lies in (0, 1) exactly when this is negative.
  const double side = d > 0.0 ? 1.0 : -1.0;
  const double g_lo = side * plane_cam.signed_distance(lerp(p1, p2, interval.lo));
  const double g_hi = side * plane_cam.signed_distance(lerp(p1, p2, interval.hi));

  if (std::min(g_lo, g_hi) >= -tol.plane) {
    out.front.push_back(interval);
  } else if (std::max(g_lo, g_hi) < 0.0) {
    out.behind.push_back(interval);
  } else {
    const double tau = g_lo / (g_lo - g_hi);
    const double t_star = interval.lo + tau * (interval.hi - interval.lo);
    const ParamInterval first{interval.lo, t_star};
    const ParamInterval second{t_star, interval.hi};
    if (g_lo < 0.0) {
      out.behind.push_back(first);
      out.front.push_back(second);
    } else {
      out.front.push_back(first);
      out.behind.push_back(second);
    }
  }
  return out;
}

std::vector<ParamInterval> occlude_by_region(const ParamInterval& behind, const Vec3& p1,
                                             const Vec3& p2, const PlaneParams& plane_cam,
                                             const PlaneFrame& frame_cam, const Region2D& region,
                                             const Tolerances& tol) {
  const Vec3 a = lerp(p1, p2, behind.lo);
  const Vec3 b = lerp(p1, p2, behind.hi);
  const Vec3 n = plane_cam.normal();
  const double m_lo = a.dot(n);
  const double m_hi = b.dot(n);
  const Vec3 qa = occlusion_parameter(a, plane_cam) * a;
  const Vec3 qb = occlusion_parameter(b, plane_cam) * b;
  if (!qa.allFinite() || !qb.allFinite()) return {behind};

  // Central projection onto the plane maps the segment to a segment;
  // s along the projection relates to tau along [lo, hi] projectively.
  const auto covered = region.covered(frame_cam.to_2d(qa), frame_cam.to_2d(qb), tol.plane);
  std::vector<ParamInterval> hidden;
  for (const auto& [s0, s1] : covered) {
    const auto to_t = [&](double s) {
      const double tau = s * m_lo / ((1.0 - s) * m_hi + s * m_lo);
      return behind.lo + std::clamp(tau, 0.0, 1.0) * (behind.hi - behind.lo);
    };
    hidden.push_back({to_t(s0), to_t(s1)});
  }
  auto visible = subtract(behind, hidden);
  std::erase_if(visible, [&](const ParamInterval& iv) { return iv.length() < tol.param; });
  return visible;
}

std::vector<LineVisibility> visible_intervals(const SceneGraph& scene, const CameraView& view,
                                              std::span<const OccluderRegion> occluders,
                                              const Tolerances& tol) {
  const RigidTransform& T = view.world_to_camera;
  struct CameraOccluder {
    int plane_id;
    PlaneParams plane;
    PlaneFrame frame;
    const Region2D* region;
  };
  std::vector<CameraOccluder> cam_occluders;
  cam_occluders.reserve(occluders.size());
  for (const auto& occ : occluders) {
    cam_occluders.push_back(
        {occ.plane_id, transform_plane(T, occ.plane), occ.frame.transformed(T), &occ.region});
  }
  std::sort(cam_occluders.begin(), cam_occluders.end(),
            [](const auto& x, const auto& y) { return x.plane_id < y.plane_id; });

  std::vector<LineVisibility> out;
  for (const auto& line : scene.lines) {
    LineVisibility vis;
    vis.line_id = line.id;
    vis.p1_cam = transform_point(T, scene.position(line.j1));
    vis.p2_cam = transform_point(T, scene.position(line.j2));
    const auto clipped = clip_to_frustum(vis.p1_cam, vis.p2_cam, view.K, view.width, view.height, tol);
    if (!clipped) continue;

    std::vector<ParamInterval> current{*clipped};
    for (const auto& occ : cam_occluders) {
      if (std::binary_search(line.adjacent_planes.begin(), line.adjacent_planes.end(),
                             occ.plane_id)) {
        continue;
      }
      std::vector<ParamInterval> next;
      for (const auto& iv : current) {
        auto split = split_by_plane(iv, vis.p1_cam, vis.p2_cam, occ.plane, tol);
        next.insert(next.end(), split.front.begin(), split.front.end());
        for (const auto& b : split.behind) {
          auto kept = occlude_by_region(b, vis.p1_cam, vis.p2_cam, occ.plane, occ.frame,
                                        *occ.region, tol);
          next.insert(next.end(), kept.begin(), kept.end());
        }
      }
      current = merge_intervals(std::move(next), tol.param);
      if (current.empty()) break;
    }
    if (current.empty()) continue;
    vis.intervals = std::move(current);
    out.push_back(std::move(vis));
  }
  return out;
}

AnnotatedView visible_segments(const SceneGraph& scene, const CameraView& view,
                               std::span<const OccluderRegion> occluders, const Tolerances& tol) {
  AnnotatedView out;
  out.view_id = view.view_id;
  out.width = view.width;
  out.height = view.height;

  const auto add_junction = [&](const Vec2& px, JunctionLabel label) {
    for (std::size_t i = 0; i < out.junctions.size(); ++i) {
      if ((out.junctions[i].position - px).norm() <= tol.pixel) {
        if (label == JunctionLabel::proper) out.junctions[i].label = JunctionLabel::proper;
        return static_cast<int>(i);
      }
    }
    out.junctions.push_back({px, label});
    return static_cast<int>(out.junctions.size() - 1);
  };
  const auto to_pixels = [&](const Vec3& p) {
    Vec2 px = project_to_pixels(view.K, p);
    px.x() = std::clamp(px.x(), 0.0, static_cast<double>(view.width));
    px.y() = std::clamp(px.y(), 0.0, static_cast<double>(view.height));
    return px;
  };
  const auto endpoint_label = [&](double t) {
    return (t <= tol.param || t >= 1.0 - tol.param) ? JunctionLabel::proper
                                                    : JunctionLabel::false_;
  };

  for (const auto& vis : visible_intervals(scene, view, occluders, tol)) {
    const auto& line = scene.line(vis.line_id);
    const LineLabel label = line_label_for(line, scene);
    for (const auto& iv : vis.intervals) {
      const Vec2 a = to_pixels(lerp(vis.p1_cam, vis.p2_cam, iv.lo));
      const Vec2 b = to_pixels(lerp(vis.p1_cam, vis.p2_cam, iv.hi));
      if ((a - b).norm() < tol.pixel) continue;
      const int ja = add_junction(a, endpoint_label(iv.lo));
      const int jb = add_junction(b, endpoint_label(iv.hi));
      if (ja == jb) continue;
      const bool duplicate =
          std::any_of(out.segments.begin(), out.segments.end(), [&](const AnnotatedSegment& s) {
            return (s.j1 == ja && s.j2 == jb) || (s.j1 == jb && s.j2 == ja);
          });
      if (duplicate) continue;
      out.segments.push_back({ja, jb, label, line.id});
    }
  }
  return out;
}

AnnotatedView visible_segments(const SceneGraph& scene, const CameraView& view,
                               std::span<const DoorStateReport> door_states,
                               const Tolerances& tol) {
  const auto occluders = occluder_regions(scene, door_states);
  return visible_segments(scene, view, occluders, tol);
}

}  // namespace srw
