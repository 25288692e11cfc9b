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

#include <array>
#include <map>
#include <string>
#include <vector>

#include "mattekit/core_io.hpp"
#include "mattekit/image.hpp"

namespace mattekit {

/// MAD-T is always reported x1000, independent of MetricConfig::scale.
inline constexpr double kMadTScale = 1000.0;

struct MetricConfig {
  /// Multiplier for MAD, MSE and Gradient error.
  double scale = 1000.0;
  int madt_kernel = 10;
  double grad_sigma = 1.4;
  /// Boundary match radius for F, as a fraction of the image diagonal.
  double boundary_tolerance_fraction = 0.008;
  /// Alpha threshold used to binarize mattes for J and F.
  double binarize_threshold = kDefaultBinarizeThreshold;

  friend bool operator==(const MetricConfig&, const MetricConfig&) = default;
};

void validate(const MetricConfig& cfg);

/// Parses a JSON object with any subset of the MetricConfig fields.
MetricConfig metric_config_from_json(const std::string& text);

double mad(const MatteSequence& pred, const MatteSequence& gt, const MetricConfig& cfg = {});
double mse(const MatteSequence& pred, const MatteSequence& gt, const MetricConfig& cfg = {});

/// Mean absolute error inside the Unknown band of a per-frame pseudo-trimap
/// built from `gt`, x1000, averaged over frames. Frames whose Unknown band is
/// empty score 0.
double mad_t(const MatteSequence& pred, const MatteSequence& gt, const MetricConfig& cfg = {});
double mad_t_frame(const AlphaPlane& pred, const AlphaPlane& gt, int kernel);

/// Normalized first-derivative-of-Gaussian kernels over [-R, R], R = ceil(3 sigma).
struct GaussianDerivativeKernels {
  std::vector<double> smooth;      // G / ||G||_2
  std::vector<double> derivative;  // G' / ||G'||_2
  int radius = 0;
};
GaussianDerivativeKernels gaussian_derivative_kernels(double sigma);

/// Gradient magnitude sqrt(gx^2 + gy^2) using separable Gaussian-derivative
/// filtering with reflect-101 borders.
AlphaPlane gradient_magnitude(const AlphaPlane& image, double sigma);

double gradient_error(const MatteSequence& pred, const MatteSequence& gt,
                      const MetricConfig& cfg = {});

/// Region similarity, x100. Two empty masks count as a perfect match.
double jaccard(const MaskSequence& pred, const MaskSequence& gt);

/// Set pixels 4-adjacent to an unset or out-of-image pixel.
BinaryPlane mask_boundary(const BinaryPlane& mask);

double boundary_f_frame(const BinaryPlane& pred, const BinaryPlane& gt, int tolerance_px);
int boundary_tolerance_px(int height, int width, double fraction);

/// Boundary F-measure, x100.
double boundary_f(const MaskSequence& pred, const MaskSequence& gt, const MetricConfig& cfg = {});

struct EvalRow {
  double mad = 0.0;
  double mad_t = 0.0;
  double mse = 0.0;
  double grad = 0.0;
  double j = 0.0;
  double f = 0.0;
  double j_and_f = 0.0;

  static constexpr std::array<const char*, 7> kColumns = {"MAD", "MAD_T", "MSE", "GRAD",
                                                          "J",   "F",     "JandF"};
  std::array<double, 7> values() const { return {mad, mad_t, mse, grad, j, f, j_and_f}; }
  friend bool operator==(const EvalRow&, const EvalRow&) = default;
};

/// All seven metrics for one clip; J and F are computed on both sequences
/// binarized at cfg.binarize_threshold.
EvalRow evaluate_clip(const MatteSequence& pred, const MatteSequence& gt,
                      const MetricConfig& cfg = {});

struct EvalReport {
  std::map<std::string, EvalRow> per_clip;
  EvalRow aggregate;
  MetricConfig config;
  std::string input_descriptor;
};

/// Unweighted mean over clips.
EvalRow aggregate_rows(const std::map<std::string, EvalRow>& rows);

EvalReport make_report(std::map<std::string, EvalRow> rows, const MetricConfig& cfg,
                       std::string input_descriptor);

std::string report_to_json(const EvalReport& report);
/// Columns: clip_id, MAD, MAD_T, MSE, GRAD, J, F, JandF.
std::string report_to_csv(const EvalReport& report);

}  // namespace mattekit
