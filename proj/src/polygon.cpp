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

#include "srw/polygon.hpp"

#include <algorithm>
#include <cmath>

namespace srw {

namespace {

double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

double distance_to_segment(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = ab.squaredNorm();
  double t = len2 > 0.0 ? (p - a).dot(ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return (a + t * ab - p).norm();
}

void edge_crossings(const Polygon2D& loop, const Vec2& a, const Vec2& b,
                    std::vector<double>& out) {
  constexpr double kEta = 1e-12;
  const Vec2 d = b - a;
  const double dlen2 = d.squaredNorm();
  if (dlen2 == 0.0) return;
  const double dlen = std::sqrt(dlen2);
  const std::size_t n = loop.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& p = loop[i];
    const Vec2& q = loop[(i + 1) % n];
    const Vec2 e = q - p;
    const Vec2 w = p - a;
    const double denom = cross(d, e);
    const double elen = e.norm();
    if (std::abs(denom) > 1e-14 * dlen * elen) {
      const double s = cross(w, e) / denom;
      const double r = cross(w, d) / denom;
      if (r >= -kEta && r <= 1.0 + kEta && s >= -kEta && s <= 1.0 + kEta) {
        out.push_back(std::clamp(s, 0.0, 1.0));
      }
    } else if (std::abs(cross(w, d)) <= 1e-12 * dlen * std::max(1.0, w.norm())) {
      // Collinear overlap: the edge endpoints bound the shared piece.
      for (const Vec2* v : {&p, &q}) {
        const double s = (*v - a).dot(d) / dlen2;
        if (s > 0.0 && s < 1.0) out.push_back(s);
      }
    }
  }
}

}  // namespace

double signed_area(const Polygon2D& loop) {
  double twice = 0.0;
  const std::size_t n = loop.size();
  for (std::size_t i = 0; i < n; ++i) twice += cross(loop[i], loop[(i + 1) % n]);
  return 0.5 * twice;
}

bool point_in_polygon(const Polygon2D& loop, const Vec2& q) {
  bool inside = false;
  const std::size_t n = loop.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2& a = loop[i];
    const Vec2& b = loop[j];
    if ((a.y() > q.y()) != (b.y() > q.y())) {
      const double x = a.x() + (q.y() - a.y()) * (b.x() - a.x()) / (b.y() - a.y());
      if (q.x() < x) inside = !inside;
    }
  }
  return inside;
}

bool on_boundary(const Polygon2D& loop, const Vec2& q, double tol) {
  const std::size_t n = loop.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (distance_to_segment(q, loop[i], loop[(i + 1) % n]) <= tol) return true;
  }
  return false;
}

bool Region2D::contains(const Vec2& q, double tol) const {
  if (on_boundary(outer, q, tol)) return true;
  for (const auto& h : holes) {
    if (on_boundary(h, q, tol)) return false;
  }
  if (!point_in_polygon(outer, q)) return false;
  for (const auto& h : holes) {
    if (point_in_polygon(h, q)) return false;
  }
  return true;
}

std::vector<double> Region2D::crossing_params(const Vec2& a, const Vec2& b) const {
  std::vector<double> params{0.0, 1.0};
  edge_crossings(outer, a, b, params);
  for (const auto& h : holes) edge_crossings(h, a, b, params);
  std::sort(params.begin(), params.end());
  params.erase(std::unique(params.begin(), params.end(),
                           [](double x, double y) { return y - x <= 1e-15; }),
               params.end());
  return params;
}

std::vector<std::pair<double, double>> Region2D::covered(const Vec2& a, const Vec2& b,
                                                        double tol) const {
  std::vector<std::pair<double, double>> out;
  const auto params = crossing_params(a, b);
  for (std::size_t i = 0; i + 1 < params.size(); ++i) {
    const double s0 = params[i];
    const double s1 = params[i + 1];
    const Vec2 mid = a + 0.5 * (s0 + s1) * (b - a);
    if (!contains(mid, tol)) continue;
    if (!out.empty() && out.back().second >= s0) {
      out.back().second = s1;
    } else {
      out.emplace_back(s0, s1);
    }
  }
  return out;
}

}  // namespace srw
