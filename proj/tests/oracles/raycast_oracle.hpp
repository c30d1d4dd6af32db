// Visibility oracle: dense sampling along each 3D line with a direct
// ray-cast occlusion test per sample.

#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "srw/geometry.hpp"
#include "srw/ingest.hpp"
#include "srw/scene.hpp"
#include "srw/visibility.hpp"

namespace srw::oracle {

struct Occluder {
  int plane_id = 0;
  Vec3 n = Vec3::UnitZ();
  double d = 0.0;
  std::vector<Vec3> outer;
  std::vector<std::vector<Vec3>> holes;
};

/// Structural planes occlude; windows and open doors are cut out of them.
/// `door_open` maps door plane id to its state; unknown doors are closed.
inline std::vector<Occluder> occluders(const SceneGraph& scene, const std::map<int, bool>& door_open) {
  std::vector<Occluder> out;
  for (const auto& p : scene.planes) {
    if (p.parent_wall) continue;
    Occluder o;
    o.plane_id = p.plane_id;
    o.n = p.params.normal();
    o.d = p.params.offset();
    for (int id : p.outer_boundary) o.outer.push_back(scene.position(id));
    for (const auto& op : p.openings) {
      const auto it = door_open.find(op.door_id);
      const bool is_window = op.kind == OpeningKind::window;
      if (!is_window && (it == door_open.end() || !it->second)) continue;
      std::vector<Vec3> hole;
      for (int id : op.loop) hole.push_back(scene.position(id));
      o.holes.push_back(hole);
    }
    out.push_back(o);
  }
  return out;
}

// Even-odd test after dropping the dominant normal axis.
inline bool inside_loop(const std::vector<Vec3>& loop, const Vec3& q, const Vec3& n) {
  int drop = 0;
  if (std::abs(n.y()) > std::abs(n[drop])) drop = 1;
  if (std::abs(n.z()) > std::abs(n[drop])) drop = 2;
  const int a = (drop + 1) % 3;
  const int b = (drop + 2) % 3;
  bool in = false;
  for (std::size_t i = 0, j = loop.size() - 1; i < loop.size(); j = i++) {
    const double yi = loop[i][b];
    const double yj = loop[j][b];
    if ((yi > q[b]) != (yj > q[b])) {
      const double x = loop[i][a] + (q[b] - yi) * (loop[j][a] - loop[i][a]) / (yj - yi);
      if (q[a] < x) in = !in;
    }
  }
  return in;
}

/// True when the world point at parameter t of `line` is in front of the
/// camera, inside the image and not hidden by a non-adjacent occluder.
inline bool sample_visible(const SceneGraph& scene, const CameraView& view,
                           const std::vector<Occluder>& occ, const Line3D& line, double t) {
  const Vec3 a = scene.position(line.j1);
  const Vec3 b = scene.position(line.j2);
  const Vec3 p = a + t * (b - a);
  const Mat3& R = view.world_to_camera.R;
  const Vec3 pc = R * p + view.world_to_camera.t;
  if (!(pc.z() > 1e-6)) return false;
  const double u = view.K.fx * pc.x() / pc.z() + view.K.cx;
  const double v = view.K.fy * pc.y() / pc.z() + view.K.cy;
  if (u < 0.0 || v < 0.0 || u > view.width || v > view.height) return false;
  const Vec3 c = -(R.transpose() * view.world_to_camera.t);
  const Vec3 dir = p - c;
  for (const auto& o : occ) {
    if (std::find(line.adjacent_planes.begin(), line.adjacent_planes.end(), o.plane_id) !=
        line.adjacent_planes.end()) {
      continue;
    }
    const double denom = o.n.dot(dir);
    if (std::abs(denom) < 1e-15) continue;
    const double s = -(o.n.dot(c) + o.d) / denom;
    if (!(s > 0.0 && s < 1.0)) continue;
    // Samples lying on the plane itself are not hidden by it.
    if (std::abs(o.n.dot(p) + o.d) <= 1e-6) continue;
    const Vec3 hit = c + s * dir;
    if (!inside_loop(o.outer, hit, o.n)) continue;
    bool in_hole = false;
    for (const auto& h : o.holes) in_hole = in_hole || inside_loop(h, hit, o.n);
    if (!in_hole) return false;
  }
  return true;
}

struct Span {
  double lo = 0.0;
  double hi = 0.0;
};

/// Visible runs from n midpoint samples; run ends sit on the half-cell
/// boundaries.
inline std::vector<Span> sampled_intervals(const SceneGraph& scene, const CameraView& view,
                                           const std::vector<Occluder>& occ, const Line3D& line,
                                           int n) {
  std::vector<Span> out;
  bool open = false;
  for (int k = 0; k < n; ++k) {
    const double t = (k + 0.5) / n;
    const bool vis = sample_visible(scene, view, occ, line, t);
    if (vis && !open) {
      out.push_back({static_cast<double>(k) / n, 0.0});
      open = true;
    }
    if (!vis && open) {
      out.back().hi = static_cast<double>(k) / n;
      open = false;
    }
  }
  if (open) out.back().hi = 1.0;
  return out;
}

/// Merges gaps below `gap` and drops pieces shorter than `gap`.
inline std::vector<Span> normalize(std::vector<Span> spans, double gap) {
  std::vector<Span> merged;
  for (const auto& s : spans) {
    if (!merged.empty() && s.lo - merged.back().hi < gap) {
      merged.back().hi = std::max(merged.back().hi, s.hi);
    } else {
      merged.push_back(s);
    }
  }
  std::vector<Span> out;
  for (const auto& s : merged) {
    if (s.hi - s.lo >= gap) out.push_back(s);
  }
  return out;
}

struct Agreement {
  bool ok = true;
  double max_error = 0.0;
  std::string detail;
};

/// Compares analytic intervals with sampled runs. Both sides have gaps and
/// pieces shorter than `gap` removed first, since the sampler cannot
/// resolve them.
inline Agreement compare_intervals(const std::vector<ParamInterval>& ours,
                                   const std::vector<Span>& sampled, double tol, double gap) {
  std::vector<Span> a;
  for (const auto& iv : ours) a.push_back({iv.lo, iv.hi});
  a = normalize(a, gap);
  const auto b = normalize(sampled, gap);
  Agreement out;
  if (a.size() != b.size()) {
    out.ok = false;
    out.detail = std::to_string(a.size()) + " intervals vs oracle " + std::to_string(b.size());
    return out;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    out.max_error = std::max({out.max_error, std::abs(a[i].lo - b[i].lo), std::abs(a[i].hi - b[i].hi)});
  }
  out.ok = out.max_error <= tol;
  if (!out.ok) out.detail = "endpoint error " + std::to_string(out.max_error);
  return out;
}

/// Runs the analytic fold and the sampler on every line of one view.
inline Agreement compare_view(const SceneGraph& scene, const CameraView& view,
                              const std::map<int, bool>& door_open, int samples, double tol,
                              double gap) {
  std::vector<DoorStateReport> states;
  for (const auto& [id, open] : door_open) {
    DoorStateReport r;
    r.door_id = id;
    r.state = open ? DoorState::open : DoorState::closed;
    states.push_back(r);
  }
  const auto regions = occluder_regions(scene, states);
  const auto occ = occluders(scene, door_open);
  std::map<int, std::vector<ParamInterval>> ours;
  for (auto& lv : visible_intervals(scene, view, regions)) ours[lv.line_id] = lv.intervals;
  Agreement total;
  for (const auto& line : scene.lines) {
    const auto it = ours.find(line.id);
    const auto a = compare_intervals(it == ours.end() ? std::vector<ParamInterval>{} : it->second,
                                     sampled_intervals(scene, view, occ, line, samples), tol, gap);
    total.max_error = std::max(total.max_error, a.max_error);
    if (!a.ok && total.ok) {
      total.ok = false;
      total.detail = view.view_id + " line " + std::to_string(line.id) + ": " + a.detail;
    }
  }
  return total;
}

}  // namespace srw::oracle
