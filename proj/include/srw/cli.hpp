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

// Batch driver behind the `srw` executable.
//
// Corpus layout read by filter / doors / generate:
//
//   <input>/label_map.json                 optional, shared by all scenes
//   <input>/<scene_id>/scene.json
//   <input>/<scene_id>/label_map.json      optional, overrides the shared one
//   <input>/<scene_id>/views/<view>.json   mask paths relative to this file
//
// eval reads predictions and annotations laid out as
// <root>/<scene_id>/<view_id>.json.

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "srw/config.hpp"
#include "srw/geometry.hpp"

namespace srw::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitConfig = 2;

struct RunConfig {
  std::string command;
  std::filesystem::path input;
  std::filesystem::path output;
  std::filesystem::path gt;  // eval only; empty means <input>/annotations
  std::uint64_t seed = 0;
  int workers = 1;
  bool nms = false;
  bool allow_missing = false;
  bool nonsemantic = false;
  Thresholds thresholds;
  Tolerances tolerances = default_tolerances();
};

/// Parses argv, runs the command and returns the process exit code.
int main(int argc, char** argv);

/// Throws srw::Error for configuration problems.
void validate(const RunConfig& config);

int run(const RunConfig& config);
int cmd_filter(const RunConfig& config);
int cmd_doors(const RunConfig& config);
int cmd_generate(const RunConfig& config);
int cmd_eval(const RunConfig& config);
int cmd_stats(const RunConfig& config);

/// Calls fn(i) for i in [0, n) on `workers` threads. fn must only touch
/// state owned by index i.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

/// Counts of per-plane max / median / min junction residuals over
/// log10(mm) in [lo, hi). Values outside the range, including zero
/// residuals, land in the first or last bin.
struct ResidualHistogram {
  double lo = -8.0;
  double hi = 2.0;
  int bins = 50;
  std::vector<long> max = std::vector<long>(50, 0);
  std::vector<long> median = std::vector<long>(50, 0);
  std::vector<long> min = std::vector<long>(50, 0);

  int bin(double residual_mm) const;
  void add(const ResidualSummary& s);
  void merge(const ResidualHistogram& other);
};

/// Columns: bin_lo,bin_hi,max,median,min (bin edges in log10 mm).
void write_histogram_csv(const std::filesystem::path& path, const ResidualHistogram& h);

/// Scene directories under `root` that contain scene.json, sorted by name.
std::vector<std::filesystem::path> scene_dirs(const std::filesystem::path& root);

}  // namespace srw::cli
