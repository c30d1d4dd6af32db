// Shared helpers for the test binaries.

#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <Eigen/Geometry>

#include "srw/geometry.hpp"
#include "srw/ingest.hpp"
#include "srw/visibility.hpp"
#include "srw/wireframe.hpp"

namespace srw::test {

inline std::filesystem::path data_dir() { return SRW_TEST_DATA; }
inline std::string data(const std::string& name) { return (data_dir() / name).string(); }
inline std::string srw_binary() { return SRW_BINARY; }

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("srw_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Runs a shell command and returns its exit status.
inline int run(const std::string& cmd) {
  const int status = std::system((cmd + " 2>/dev/null").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

inline Vec3 random_unit(std::mt19937_64& gen) {
  std::normal_distribution<double> n(0.0, 1.0);
  return Vec3(n(gen), n(gen), n(gen)).normalized();
}

inline Mat3 random_rotation(std::mt19937_64& gen) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::Quaterniond q(n(gen), n(gen), n(gen), n(gen));
  return q.normalized().toRotationMatrix();
}

/// Camera at `center` looking along `forward` with world +z up.
inline CameraView look_at(const Vec3& center, const Vec3& forward, const Intrinsics& K, int width,
                          int height) {
  const Vec3 f = forward.normalized();
  const Vec3 right = f.cross(Vec3::UnitZ()).normalized();
  const Vec3 down = f.cross(right);
  CameraView v;
  v.view_id = "look_at";
  v.K = K;
  v.width = width;
  v.height = height;
  v.world_to_camera.R.row(0) = right.transpose();
  v.world_to_camera.R.row(1) = down.transpose();
  v.world_to_camera.R.row(2) = f.transpose();
  v.world_to_camera.t = -(v.world_to_camera.R * center);
  return v;
}

/// Prediction that reproduces an annotation with one-hot scores.
inline Prediction perfect_prediction(const AnnotatedView& view, bool with_junctions = true) {
  Prediction p;
  p.view_id = view.view_id;
  p.width = view.width;
  p.height = view.height;
  if (with_junctions) {
    for (const auto& j : view.junctions) {
      JunctionScores s{};
      s[static_cast<std::size_t>(index_of(j.label))] = 1.0;
      p.junctions.push_back({j.position, s});
    }
  }
  for (const auto& seg : view.segments) {
    LineScores s{};
    s[static_cast<std::size_t>(index_of(seg.label))] = 1.0;
    p.segments.push_back({view.junctions[static_cast<std::size_t>(seg.j1)].position,
                          view.junctions[static_cast<std::size_t>(seg.j2)].position, s});
  }
  return p;
}

}  // namespace srw::test
