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

#include <span>
#include <vector>

#include <Eigen/Core>

#include "srw/config.hpp"

namespace srw {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat3 = Eigen::Matrix3d;

/// Plane as homogeneous 4-vector (n, d): a point q lies on it iff
/// (q, 1) . pi == 0. Stored with a unit normal.
class PlaneParams {
 public:
  PlaneParams() = default;
  /// Normalizes so that |n| == 1. Throws DegenerateFit if n is zero.
  PlaneParams(const Vec3& normal, double offset);

  const Vec4& coefficients() const { return pi_; }
  Vec3 normal() const { return pi_.head<3>(); }
  double offset() const { return pi_[3]; }

  /// Signed distance (positive on the normal side).
  double signed_distance(const Vec3& p) const { return normal().dot(p) + offset(); }

  bool operator==(const PlaneParams&) const = default;

 private:
  Vec4 pi_{0.0, 0.0, 1.0, 0.0};
};

/// q_out = R * q_in + t.
struct RigidTransform {
  Mat3 R = Mat3::Identity();
  Vec3 t = Vec3::Zero();

  static RigidTransform identity() { return {}; }
  RigidTransform inverse() const;
  /// True when R is orthonormal with det +1 within `tol`.
  bool is_valid(double tol = default_tolerances().rotation) const;

  bool operator==(const RigidTransform& o) const { return R == o.R && t == o.t; }
};

struct Intrinsics {
  double fx = 1.0;
  double fy = 1.0;
  double cx = 0.0;
  double cy = 0.0;

  bool operator==(const Intrinsics&) const = default;
};

struct ResidualSummary {
  double max = 0.0;
  double median = 0.0;
  double min = 0.0;
};

/// Divides by the last coordinate. Throws PointAtInfinity when
/// |w| <= tol.homogeneous.
Vec3 from_homogeneous(const Vec4& p, const Tolerances& tol = default_tolerances());

/// Algebraic least-squares plane: minimizes |M pi|^2 subject to |pi| = 1
/// where the rows of M are (x, y, z, 1). The result is rescaled to a unit
/// normal with d <= 0 (for d == 0 the first nonzero normal component is
/// positive). Throws DegenerateFit for fewer than three points or collinear
/// input.
PlaneParams fit_plane_dlt(std::span<const Vec3> points);

/// |M pi| for the raw (|pi| = 1 normalized) coefficient vector.
double algebraic_residual(std::span<const Vec3> points, const Vec4& pi);

double point_plane_distance(const Vec3& p, const PlaneParams& plane);

/// Max / median / min point-plane distance. Throws EmptyInput.
ResidualSummary residual_summary(const PlaneParams& plane, std::span<const Vec3> points);

Vec3 transform_point(const RigidTransform& T, const Vec3& p);

/// Incidence-preserving plane transform: returns pi' with
/// (T q)^T pi' == q^T pi, i.e. pi' = T^{-T} pi.
PlaneParams transform_plane(const RigidTransform& T, const PlaneParams& plane);

/// Pinhole projection of a camera-frame point. Throws BehindCamera for
/// z <= 0.
Vec2 project_to_pixels(const Intrinsics& K, const Vec3& p_cam);

/// Orthonormal in-plane frame: (u, v, n) is right handed, so a loop that is
/// counter-clockwise in (u, v) is counter-clockwise seen from the normal side.
struct PlaneFrame {
  Vec3 origin = Vec3::Zero();
  Vec3 u = Vec3::UnitX();
  Vec3 v = Vec3::UnitY();
  Vec3 n = Vec3::UnitZ();

  /// Frame on `plane` with origin at the projection of `anchor`.
  static PlaneFrame on_plane(const PlaneParams& plane, const Vec3& anchor);

  Vec2 to_2d(const Vec3& p) const {
    const Vec3 d = p - origin;
    return {d.dot(u), d.dot(v)};
  }
  Vec3 to_3d(const Vec2& q) const { return origin + q.x() * u + q.y() * v; }
  PlaneFrame transformed(const RigidTransform& T) const;
};

}  // namespace srw
