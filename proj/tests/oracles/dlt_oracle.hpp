// Plane-fit oracle: smallest right singular vector of the design matrix.

#pragma once

#include <span>

#include <Eigen/Dense>

#include "srw/geometry.hpp"

namespace srw::oracle {

inline Eigen::MatrixX4d design_matrix(std::span<const Vec3> pts) {
  Eigen::MatrixX4d M(static_cast<Eigen::Index>(pts.size()), 4);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    M.row(static_cast<Eigen::Index>(i)) << pts[i].x(), pts[i].y(), pts[i].z(), 1.0;
  }
  return M;
}

/// Unit 4-vector minimizing |M pi| via a dense SVD.
inline Vec4 svd_plane(std::span<const Vec3> pts) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(design_matrix(pts), Eigen::ComputeFullV);
  return svd.matrixV().col(3);
}

/// Same minimizer through the eigen-decomposition of M^T M.
inline Vec4 eigen_plane(std::span<const Vec3> pts) {
  const Eigen::MatrixX4d M = design_matrix(pts);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(M.transpose() * M);
  return es.eigenvectors().col(0);
}

inline double residual(std::span<const Vec3> pts, const Vec4& pi) {
  return (design_matrix(pts) * pi.normalized()).norm();
}

/// Distance by projecting onto the plane and measuring the offset.
inline double project_and_measure(const Vec3& p, const Vec3& n, double d) {
  const Vec3 foot = p - ((p.dot(n) + d) / n.squaredNorm()) * n;
  return (p - foot).norm();
}

}  // namespace srw::oracle
