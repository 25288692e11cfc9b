// Copyright 2026 The mattekit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <vector>

#include "mattekit/image.hpp"

namespace mattekit {

inline constexpr int kDefaultPyramidLevels = 5;

/// Loss value and its gradient with respect to the first argument.
struct LossValueAndGrad {
  double value = 0.0;
  Plane<double> grad;
};

/// mean |pred - gt|; gradient sign(pred - gt) / N with sign(0) = 0.
LossValueAndGrad l1_loss(const AlphaPlane& pred, const AlphaPlane& gt);

/// Laplacian bands of a Burt-Adelson pyramid: (1,4,6,4,1)/16 blur applied
/// separably with reflect-101 borders, decimation to even indices, and
/// expansion by zero insertion followed by the same blur scaled by 2 per axis.
/// band_i = gauss_i - expand(gauss_{i+1}) for i in [0, levels).
std::vector<AlphaPlane> laplacian_bands(const AlphaPlane& image, int levels);

/// sum_i 2^i * mean |band_i(pred) - band_i(gt)|. Requires H, W >= 2^levels.
LossValueAndGrad laplacian_pyramid_loss(const AlphaPlane& pred, const AlphaPlane& gt,
                                        int levels = kDefaultPyramidLevels);

/// l1_loss + lambda_lap * laplacian_pyramid_loss.
LossValueAndGrad mat_loss(const AlphaPlane& pred, const AlphaPlane& gt, double lambda_lap = 1.0,
                          int levels = kDefaultPyramidLevels);

struct MatLossValues {
  double l1 = 0.0;
  double laplacian = 0.0;
  double total = 0.0;
};

/// Frame-averaged loss values over two aligned sequences.
MatLossValues mat_loss_values(const MatteSequence& pred, const MatteSequence& gt,
                              double lambda_lap = 1.0, int levels = kDefaultPyramidLevels);

/// P x D patch features (one row per patch), all finite.
class FeatureGrid {
 public:
  explicit FeatureGrid(Plane<double> patches);
  int patch_count() const { return patches_.height(); }
  int channels() const { return patches_.width(); }
  const Plane<double>& patches() const { return patches_; }

 private:
  Plane<double> patches_;
};

/// -(1/P) sum_p cos(a_p, b_p); gradient with respect to `a`.
LossValueAndGrad alignment_loss(const FeatureGrid& a, const FeatureGrid& b);

}  // namespace mattekit
