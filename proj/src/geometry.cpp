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

#include "srw/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "srw/error.hpp"

namespace srw {

PlaneParams::PlaneParams(const Vec3& normal, double offset) {
  const double norm = normal.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw DegenerateFit("plane normal has zero length");
  }
  pi_ << normal / norm, offset / norm;
}

RigidTransform RigidTransform::inverse() const {
  RigidTransform inv;
  inv.R = R.transpose();
  inv.t = -(inv.R * t);
  return inv;
}

bool RigidTransform::is_valid(double tol) const {
  if (!R.allFinite() || !t.allFinite()) return false;
  const double ortho = (R.transpose() * R - Mat3::Identity()).cwiseAbs().maxCoeff();
  return ortho <= tol && std::abs(R.determinant() - 1.0) <= tol;
}

Vec3 from_homogeneous(const Vec4& p, const Tolerances& tol) {
  if (!(std::abs(p[3]) > tol.homogeneous)) {
    throw PointAtInfinity("last homogeneous coordinate is " + std::to_string(p[3]));
  }
  return p.head<3>() / p[3];
}

namespace {

// Normalizes the raw 4-vector to a unit normal and applies the sign rule.
PlaneParams canonical_plane(const Vec4& pi) {
  Vec3 n = pi.head<3>();
  const double norm = n.norm();
  if (!(norm > 0.0)) throw DegenerateFit("fitted normal vanished");
  n /= norm;
  double d = pi[3] / norm;
  bool flip = d > 0.0;
  if (d == 0.0) {
    for (int k = 0; k < 3; ++k) {
      if (n[k] != 0.0) {
        flip = n[k] < 0.0;
        break;
      }
    }
  }
  if (flip) {
    n = -n;
    d = -d;
  }
  if (d == 0.0) d = 0.0;  // drop negative zero
  return PlaneParams(n, d);
}

}  // namespace

PlaneParams fit_plane_dlt(std::span<const Vec3> points) {
  const auto count = static_cast<double>(points.size());
  if (points.size() < 3) {
    throw DegenerateFit("need at least 3 points, got " + std::to_string(points.size()));
  }

  Vec3 centroid = Vec3::Zero();
  for (const auto& p : points) centroid += p;
  centroid /= count;

  // Singular values of the centered points keep full relative precision,
  // which the square roots of scatter eigenvalues would not.
  Eigen::MatrixX3d centered(static_cast<Eigen::Index>(points.size()), 3);
  for (std::size_t i = 0; i < points.size(); ++i) {
    centered.row(static_cast<Eigen::Index>(i)) = (points[i] - centroid).transpose();
  }
  Eigen::JacobiSVD<Eigen::MatrixX3d> svd(centered, Eigen::ComputeFullV);
  const Vec3 sv = svd.singularValues();
  if (!(sv[0] > 0.0) || !(sv[1] > 1e-9 * sv[0])) {
    throw DegenerateFit("points are collinear or coincident");
  }

  // The orthogonal-regression plane through the centroid is within a tiny
  // offset of the algebraic minimizer, and can be formed without the
  // cancellation that squaring raw millimetre coordinates causes.
  const Vec3 n0 = svd.matrixV().col(2);
  Vec4 pi;
  pi << n0, -n0.dot(centroid);
  pi.normalize();

  // Newton steps on the stationarity condition (M^T M - lambda) pi = 0,
  // restricted to the orthogonal complement of the current estimate.
  for (int iter = 0; iter < 3; ++iter) {
    Eigen::Matrix<double, 4, 4> basis =
        Eigen::HouseholderQR<Eigen::Matrix<double, 4, 1>>(pi).householderQ();
    const Eigen::Matrix<double, 4, 3> complement = basis.rightCols<3>();

    const double shift = centroid.dot(pi.head<3>()) + pi[3];
    Eigen::Matrix3d gram = Eigen::Matrix3d::Zero();
    Vec3 grad = Vec3::Zero();
    double lambda = 0.0;
    for (const auto& p : points) {
      const double r = (p - centroid).dot(pi.head<3>()) + shift;
      Vec4 row;
      row << p, 1.0;
      const Eigen::RowVector3d w = row.transpose() * complement;
      gram += w.transpose() * w;
      grad += w.transpose() * r;
      lambda += r * r;
    }
    gram -= lambda * Eigen::Matrix3d::Identity();
    const Vec3 step = gram.ldlt().solve(-grad);
    if (!step.allFinite()) break;
    pi = (pi + complement * step).normalized();
    if (step.norm() < 1e-17) break;
  }

  return canonical_plane(pi);
}

double algebraic_residual(std::span<const Vec3> points, const Vec4& pi) {
  const Vec4 unit = pi.normalized();
  double sum = 0.0;
  for (const auto& p : points) {
    const double r = p.dot(unit.head<3>()) + unit[3];
    sum += r * r;
  }
  return std::sqrt(sum);
}

double point_plane_distance(const Vec3& p, const PlaneParams& plane) {
  return std::abs(plane.signed_distance(p));
}

ResidualSummary residual_summary(const PlaneParams& plane, std::span<const Vec3> points) {
  if (points.empty()) throw EmptyInput("residual summary of zero junctions");
  std::vector<double> dist;
  dist.reserve(points.size());
  for (const auto& p : points) dist.push_back(point_plane_distance(p, plane));
  std::sort(dist.begin(), dist.end());
  const std::size_t n = dist.size();
  const double median = (n % 2 == 1) ? dist[n / 2] : 0.5 * (dist[n / 2 - 1] + dist[n / 2]);
  return {dist.back(), median, dist.front()};
}

Vec3 transform_point(const RigidTransform& T, const Vec3& p) { return T.R * p + T.t; }

PlaneParams transform_plane(const RigidTransform& T, const PlaneParams& plane) {
  // T^{-T} = [R 0; -t^T R 1].
  const Vec3 n = T.R * plane.normal();
  return PlaneParams(n, plane.offset() - T.t.dot(n));
}

Vec2 project_to_pixels(const Intrinsics& K, const Vec3& p_cam) {
  if (!(p_cam.z() > 0.0)) {
    throw BehindCamera("z = " + std::to_string(p_cam.z()));
  }
  return {K.fx * p_cam.x() / p_cam.z() + K.cx, K.fy * p_cam.y() / p_cam.z() + K.cy};
}

PlaneFrame PlaneFrame::on_plane(const PlaneParams& plane, const Vec3& anchor) {
  PlaneFrame f;
  f.n = plane.normal();
  f.origin = anchor - plane.signed_distance(anchor) * f.n;
  int axis = 0;
  f.n.cwiseAbs().minCoeff(&axis);
  f.u = f.n.cross(Vec3::Unit(axis)).normalized();
  f.v = f.n.cross(f.u);
  return f;
}

PlaneFrame PlaneFrame::transformed(const RigidTransform& T) const {
  PlaneFrame f;
  f.origin = transform_point(T, origin);
  f.u = T.R * u;
  f.v = T.R * v;
  f.n = T.R * n;
  return f;
}

}  // namespace srw
