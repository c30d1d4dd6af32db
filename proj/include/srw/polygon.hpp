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

#include <vector>

#include "srw/geometry.hpp"

namespace srw {

using Polygon2D = std::vector<Vec2>;

/// Positive for counter-clockwise loops.
double signed_area(const Polygon2D& loop);

/// Even-odd crossing test. Boundary points are unspecified; pair with
/// on_boundary when it matters.
bool point_in_polygon(const Polygon2D& loop, const Vec2& q);

bool on_boundary(const Polygon2D& loop, const Vec2& q, double tol);

/// A closed outer loop minus holes. Points on the outer boundary belong to
/// the region, points on a hole boundary do not.
struct Region2D {
  Polygon2D outer;
  std::vector<Polygon2D> holes;

  bool contains(const Vec2& q, double tol) const;

  /// Parameters s in [0, 1] where the segment a + s (b - a) crosses or
  /// touches any loop edge, plus 0 and 1. Sorted, deduplicated.
  std::vector<double> crossing_params(const Vec2& a, const Vec2& b) const;

  /// Sub-intervals [s0, s1] of the segment a -> b lying inside the region.
  std::vector<std::pair<double, double>> covered(const Vec2& a, const Vec2& b,
                                                 double tol) const;
};

}  // namespace srw
