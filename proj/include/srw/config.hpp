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

namespace srw {

/// Numerical tolerances shared by every module. Lengths are millimetres,
/// parameters are fractions of a 3D segment, pixel values are full-resolution.
struct Tolerances {
  double plane = 1e-6;        // point-on-plane, duplicate junction merge (mm)
  double incidence = 1e-9;    // algebraic incidence checks
  double z_min = 1e-6;        // near plane (mm)
  double homogeneous = 1e-12; // |w| below this is a point at infinity
  double param = 1e-6;        // interval gaps and endpoint-at-junction tests
  double pixel = 0.5;         // junction merge radius and min segment length (px)
  double rotation = 1e-6;     // orthonormality of camera rotations
};

/// Pipeline thresholds. Defaults reproduce the published setup.
struct Thresholds {
  double max_plane_residual_mm = 1.0;
  double door_closed_ratio = 0.3;
  int door_samples = 100;
  double match_tau = 10.0;
  double nms_gamma = 3.0;
  std::vector<double> sap_betas{5.0, 10.0, 15.0};
  std::vector<double> jap_thetas{0.5, 1.0, 2.0};
  double eval_resolution = 128.0;
};

inline const Tolerances& default_tolerances() {
  static const Tolerances tol{};
  return tol;
}

}  // namespace srw
