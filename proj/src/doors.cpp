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

#include "srw/doors.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "srw/error.hpp"
#include "srw/polygon.hpp"

namespace srw {

std::string_view to_string(DoorState state) {
  return state == DoorState::open ? "open" : "closed";
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// [0, 1) with 53 random bits; std::uniform_real_distribution is not
// reproducible across standard libraries.
double unit_double(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::string_view scene_id, int door_id) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (unsigned char c : scene_id) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return splitmix64(splitmix64(seed ^ h) ^ static_cast<std::uint64_t>(static_cast<std::uint32_t>(door_id)));
}

std::vector<Vec3> sample_polygon_uniform(std::span<const Vec3> loop, const PlaneParams& plane,
                                         int n, std::uint64_t seed) {
  if (n < 1) throw DegeneratePolygon("sample count must be positive");
  if (loop.size() < 3) throw DegeneratePolygon("polygon has fewer than 3 vertices");
  const PlaneFrame frame = PlaneFrame::on_plane(plane, loop[0]);
  Polygon2D poly;
  for (const auto& p : loop) poly.push_back(frame.to_2d(p));
  const double area = std::abs(signed_area(poly));
  if (!(area >= 1e-6)) throw DegeneratePolygon("polygon area below 1e-6 mm^2");

  Vec2 lo = poly[0];
  Vec2 hi = poly[0];
  for (const auto& q : poly) {
    lo = lo.cwiseMin(q);
    hi = hi.cwiseMax(q);
  }
  const Vec2 span = hi - lo;

  std::mt19937_64 gen(seed);
  std::vector<Vec3> out;
  out.reserve(static_cast<std::size_t>(n));
  const double accept = area / (span.x() * span.y());
  const auto budget = static_cast<long long>(std::ceil(200.0 * n / accept)) + 1000;
  for (long long attempt = 0; attempt < budget && static_cast<int>(out.size()) < n; ++attempt) {
    const double x = lo.x() + unit_double(gen) * span.x();
    const double y = lo.y() + unit_double(gen) * span.y();
    const Vec2 q(x, y);
    if (point_in_polygon(poly, q)) out.push_back(frame.to_3d(q));
  }
  if (static_cast<int>(out.size()) < n) {
    throw DegeneratePolygon("rejection sampling did not converge");
  }
  return out;
}

DoorStateReport door_closed_ratio(int door_id, std::span<const Vec3> samples,
                                  std::span<const MaskedView> views, double closed_threshold,
                                  const Tolerances& tol) {
  std::vector<const MaskedView*> order;
  for (const auto& mv : views) {
    if (mv.mask->width != mv.view->width || mv.mask->height != mv.view->height) {
      throw DimensionMismatch("mask does not match view " + mv.view->view_id);
    }
    order.push_back(&mv);
  }
  std::sort(order.begin(), order.end(),
            [](auto* a, auto* b) { return a->view->view_id < b->view->view_id; });

  DoorStateReport report;
  report.door_id = door_id;
  for (const auto* mv : order) {
    const auto& view = *mv->view;
    for (const auto& p : samples) {
      const Vec3 q = transform_point(view.world_to_camera, p);
      if (!(q.z() > tol.z_min)) continue;
      const Vec2 px = project_to_pixels(view.K, q);
      const long ix = std::lround(px.x());
      const long iy = std::lround(px.y());
      if (ix < 0 || iy < 0 || ix >= view.width || iy >= view.height) continue;
      ++report.visible_samples;
      if (mv->mask->at(static_cast<int>(ix), static_cast<int>(iy)) == MaskClass::door) {
        ++report.door_hits;
      }
    }
  }
  if (report.visible_samples > 0) {
    const double c = static_cast<double>(report.door_hits) / report.visible_samples;
    report.closed_ratio = c;
    report.state = c > closed_threshold ? DoorState::closed : DoorState::open;
  } else {
    report.state = DoorState::closed;
  }
  return report;
}

std::vector<DoorStateReport> compute_door_states(const SceneGraph& scene,
                                                 std::span<const MaskedView> views,
                                                 std::uint64_t seed,
                                                 const Thresholds& thresholds) {
  std::vector<DoorStateReport> out;
  for (const auto& plane : scene.planes) {
    for (const auto& op : plane.openings) {
      if (op.kind != OpeningKind::door) continue;
      const auto loop = scene.loop_positions(op.loop);
      const auto& door_plane = scene.plane(op.door_id).params;
      const auto samples = sample_polygon_uniform(loop, door_plane, thresholds.door_samples,
                                                  derive_seed(seed, scene.scene_id, op.door_id));
      out.push_back(door_closed_ratio(op.door_id, samples, views, thresholds.door_closed_ratio));
    }
  }
  std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.door_id < b.door_id; });
  return out;
}

nlohmann::json door_report_to_json(const DoorStateReport& report) {
  nlohmann::json doc = {{"door_id", report.door_id},
                        {"visible_samples", report.visible_samples},
                        {"door_hits", report.door_hits},
                        {"state", std::string(to_string(report.state))}};
  doc["closed_ratio"] =
      report.closed_ratio ? nlohmann::json(*report.closed_ratio) : nlohmann::json(nullptr);
  return doc;
}

}  // namespace srw
