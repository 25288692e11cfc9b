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

#include "mattekit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "mattekit/morphology.hpp"

namespace mattekit {

void validate(const MetricConfig& cfg) {
  if (!(cfg.scale > 0.0)) throw Error("metric scale must be > 0");
  if (cfg.madt_kernel < 1) throw Error("MAD-T kernel must be >= 1");
  if (!(cfg.grad_sigma > 0.0)) throw Error("gradient sigma must be > 0");
  if (!(cfg.boundary_tolerance_fraction > 0.0))
    throw Error("boundary tolerance fraction must be > 0");
  if (!(cfg.binarize_threshold > 0.0 && cfg.binarize_threshold < 1.0))
    throw Error("binarization threshold must lie in (0, 1)");
}

MetricConfig metric_config_from_json(const std::string& text) {
  MetricConfig cfg;
  try {
    const auto j = nlohmann::json::parse(text);
    if (!j.is_object()) throw Error("metric config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
      if (key == "scale") cfg.scale = value.get<double>();
      else if (key == "madt_kernel") cfg.madt_kernel = value.get<int>();
      else if (key == "grad_sigma") cfg.grad_sigma = value.get<double>();
      else if (key == "boundary_tolerance_fraction") cfg.boundary_tolerance_fraction = value.get<double>();
      else if (key == "binarize_threshold") cfg.binarize_threshold = value.get<double>();
      else throw Error("unknown metric config field '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed metric config: ") + e.what());
  }
  validate(cfg);
  return cfg;
}

namespace {

template <typename PixelFn>
double mean_over_pixels(const MatteSequence& pred, const MatteSequence& gt, PixelFn fn) {
  double total = 0.0;
  for (std::size_t t = 0; t < pred.size(); ++t) {
    const auto p = pred[t].pixels();
    const auto g = gt[t].pixels();
    for (std::size_t i = 0; i < p.size(); ++i) total += fn(p[i] - g[i]);
  }
  return total / static_cast<double>(pred.pixel_count());
}

int reflect101(int i, int n) {
  if (n == 1) return 0;
  const int period = 2 * (n - 1);
  i %= period;
  if (i < 0) i += period;
  return i < n ? i : period - i;
}

// out(y, x) = sum_k kernel[k] * in(y, x + k - r), reflect-101 borders.
AlphaPlane correlate_rows(const AlphaPlane& in, const std::vector<double>& kernel) {
  const int r = static_cast<int>(kernel.size() / 2);
  AlphaPlane out(in.height(), in.width());
  for (int y = 0; y < in.height(); ++y)
    for (int x = 0; x < in.width(); ++x) {
      // Taps are summed in mirrored pairs so an odd kernel on a flat input
      // cancels exactly.
      double acc = kernel[r] * in(y, x);
      for (int k = 1; k <= r; ++k)
        acc += kernel[r + k] * in(y, reflect101(x + k, in.width())) +
               kernel[r - k] * in(y, reflect101(x - k, in.width()));
      out(y, x) = acc;
    }
  return out;
}

AlphaPlane correlate_cols(const AlphaPlane& in, const std::vector<double>& kernel) {
  const int r = static_cast<int>(kernel.size() / 2);
  AlphaPlane out(in.height(), in.width());
  for (int y = 0; y < in.height(); ++y)
    for (int x = 0; x < in.width(); ++x) {
      double acc = kernel[r] * in(y, x);
      for (int k = 1; k <= r; ++k)
        acc += kernel[r + k] * in(reflect101(y + k, in.height()), x) +
               kernel[r - k] * in(reflect101(y - k, in.height()), x);
      out(y, x) = acc;
    }
  return out;
}

BinaryPlane dilate_disk(const BinaryPlane& mask, int radius) {
  if (radius <= 0) return mask;
  BinaryPlane out(mask.height(), mask.width());
  for (int y = 0; y < mask.height(); ++y)
    for (int x = 0; x < mask.width(); ++x) {
      if (!mask(y, x)) continue;
      for (int dy = -radius; dy <= radius; ++dy)
        for (int dx = -radius; dx <= radius; ++dx)
          if (dx * dx + dy * dy <= radius * radius && out.contains(y + dy, x + dx))
            out(y + dy, x + dx) = 1;
    }
  return out;
}

std::size_t count_set(const BinaryPlane& m) {
  return static_cast<std::size_t>(std::count(m.pixels().begin(), m.pixels().end(), 1));
}

// |a AND b|
std::size_t count_overlap(const BinaryPlane& a, const BinaryPlane& b) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) n += (a.pixels()[i] && b.pixels()[i]) ? 1 : 0;
  return n;
}

}  // namespace

double mad(const MatteSequence& pred, const MatteSequence& gt, const MetricConfig& cfg) {
  require_same_shape(pred, gt, "mad");
  return mean_over_pixels(pred, gt, [](double d) { return std::abs(d); }) * cfg.scale;
}

double mse(const MatteSequence& pred, const MatteSequence& gt, const MetricConfig& cfg) {
  require_same_shape(pred, gt, "mse");
  return mean_over_pixels(pred, gt, [](double d) { return d * d; }) * cfg.scale;
}

double mad_t_frame(const AlphaPlane& pred, const AlphaPlane& gt, int kernel) {
  if (!pred.same_shape(gt)) throw Error("mad_t: frame shape mismatch");
  const Trimap trimap = make_trimap(gt, kernel);
  std::size_t unknown = 0;
  double total = 0.0;
  for (std::size_t i = 0; i < trimap.size(); ++i) {
    if (trimap.pixels()[i] != TrimapLabel::Unknown) continue;
    ++unknown;
    total += std::abs(pred.pixels()[i] - gt.pixels()[i]);
  }
  if (unknown == 0) return 0.0;
  return total / static_cast<double>(unknown) * kMadTScale;
}

double mad_t(const MatteSequence& pred, const MatteSequence& gt, const MetricConfig& cfg) {
  require_same_shape(pred, gt, "mad_t");
  double total = 0.0;
  for (std::size_t t = 0; t < pred.size(); ++t) total += mad_t_frame(pred[t], gt[t], cfg.madt_kernel);
  return total / static_cast<double>(pred.size());
}

GaussianDerivativeKernels gaussian_derivative_kernels(double sigma) {
  if (!(sigma > 0.0)) throw Error("gradient sigma must be > 0");
  GaussianDerivativeKernels k;
  k.radius = static_cast<int>(std::ceil(3.0 * sigma));
  double smooth_norm = 0.0;
  double deriv_norm = 0.0;
  for (int x = -k.radius; x <= k.radius; ++x) {
    const double g = std::exp(-(x * x) / (2.0 * sigma * sigma));
    const double dg = -x / (sigma * sigma) * g;
    k.smooth.push_back(g);
    k.derivative.push_back(dg);
    smooth_norm += g * g;
    deriv_norm += dg * dg;
  }
  smooth_norm = std::sqrt(smooth_norm);
  deriv_norm = std::sqrt(deriv_norm);
  for (double& v : k.smooth) v /= smooth_norm;
  for (double& v : k.derivative) v /= deriv_norm;
  return k;
}

AlphaPlane gradient_magnitude(const AlphaPlane& image, double sigma) {
  const GaussianDerivativeKernels k = gaussian_derivative_kernels(sigma);
  if (image.height() <= 2 * k.radius || image.width() <= 2 * k.radius)
    throw Error("gradient error: frame " + shape_string(image) +
                " smaller than kernel support (needs > " + std::to_string(2 * k.radius) + " px)");
  const AlphaPlane gx = correlate_cols(correlate_rows(image, k.derivative), k.smooth);
  const AlphaPlane gy = correlate_rows(correlate_cols(image, k.derivative), k.smooth);
  AlphaPlane out(image.height(), image.width());
  for (std::size_t i = 0; i < out.size(); ++i)
    out.pixels()[i] = std::hypot(gx.pixels()[i], gy.pixels()[i]);
  return out;
}

double gradient_error(const MatteSequence& pred, const MatteSequence& gt, const MetricConfig& cfg) {
  require_same_shape(pred, gt, "gradient_error");
  double total = 0.0;
  for (std::size_t t = 0; t < pred.size(); ++t) {
    const AlphaPlane gp = gradient_magnitude(pred[t], cfg.grad_sigma);
    const AlphaPlane gg = gradient_magnitude(gt[t], cfg.grad_sigma);
    double frame = 0.0;
    for (std::size_t i = 0; i < gp.size(); ++i) {
      const double d = gp.pixels()[i] - gg.pixels()[i];
      frame += d * d;
    }
    total += frame / static_cast<double>(gp.size());
  }
  return total / static_cast<double>(pred.size()) * cfg.scale;
}

double jaccard(const MaskSequence& pred, const MaskSequence& gt) {
  require_same_shape(pred, gt, "jaccard");
  double total = 0.0;
  for (std::size_t t = 0; t < pred.size(); ++t) {
    const std::size_t inter = count_overlap(pred[t], gt[t]);
    const std::size_t uni = count_set(pred[t]) + count_set(gt[t]) - inter;
    total += uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
  }
  return total / static_cast<double>(pred.size()) * 100.0;
}

BinaryPlane mask_boundary(const BinaryPlane& mask) {
  BinaryPlane out(mask.height(), mask.width());
  constexpr int kDx[4] = {1, -1, 0, 0};
  constexpr int kDy[4] = {0, 0, 1, -1};
  for (int y = 0; y < mask.height(); ++y)
    for (int x = 0; x < mask.width(); ++x) {
      if (!mask(y, x)) continue;
      for (int d = 0; d < 4; ++d) {
        const int ny = y + kDy[d];
        const int nx = x + kDx[d];
        if (!mask.contains(ny, nx) || !mask(ny, nx)) {
          out(y, x) = 1;
          break;
        }
      }
    }
  return out;
}

int boundary_tolerance_px(int height, int width, double fraction) {
  return static_cast<int>(std::lround(fraction * std::hypot(double(height), double(width))));
}

double boundary_f_frame(const BinaryPlane& pred, const BinaryPlane& gt, int tolerance_px) {
  if (!pred.same_shape(gt)) throw Error("boundary_f: frame shape mismatch");
  const BinaryPlane pb = mask_boundary(pred);
  const BinaryPlane gb = mask_boundary(gt);
  const std::size_t n_pred = count_set(pb);
  const std::size_t n_gt = count_set(gb);
  if (n_pred == 0 && n_gt == 0) return 1.0;
  if (n_pred == 0 || n_gt == 0) return 0.0;
  const double precision =
      static_cast<double>(count_overlap(pb, dilate_disk(gb, tolerance_px))) / n_pred;
  const double recall =
      static_cast<double>(count_overlap(gb, dilate_disk(pb, tolerance_px))) / n_gt;
  if (precision + recall == 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

double boundary_f(const MaskSequence& pred, const MaskSequence& gt, const MetricConfig& cfg) {
  require_same_shape(pred, gt, "boundary_f");
  const int tol = boundary_tolerance_px(gt.height(), gt.width(), cfg.boundary_tolerance_fraction);
  double total = 0.0;
  for (std::size_t t = 0; t < pred.size(); ++t) total += boundary_f_frame(pred[t], gt[t], tol);
  return total / static_cast<double>(pred.size()) * 100.0;
}

EvalRow evaluate_clip(const MatteSequence& pred, const MatteSequence& gt, const MetricConfig& cfg) {
  validate(cfg);
  require_same_shape(pred, gt, "evaluate_clip");
  EvalRow row;
  row.mad = mad(pred, gt, cfg);
  row.mad_t = mad_t(pred, gt, cfg);
  row.mse = mse(pred, gt, cfg);
  row.grad = gradient_error(pred, gt, cfg);
  const MaskSequence pred_bin = binarize_matte(pred, cfg.binarize_threshold);
  const MaskSequence gt_bin = binarize_matte(gt, cfg.binarize_threshold);
  row.j = jaccard(pred_bin, gt_bin);
  row.f = boundary_f(pred_bin, gt_bin, cfg);
  row.j_and_f = (row.j + row.f) / 2.0;
  return row;
}

EvalRow aggregate_rows(const std::map<std::string, EvalRow>& rows) {
  EvalRow mean;
  if (rows.empty()) return mean;
  for (const auto& [_, r] : rows) {
    mean.mad += r.mad;
    mean.mad_t += r.mad_t;
    mean.mse += r.mse;
    mean.grad += r.grad;
    mean.j += r.j;
    mean.f += r.f;
    mean.j_and_f += r.j_and_f;
  }
  const double n = static_cast<double>(rows.size());
  mean.mad /= n;
  mean.mad_t /= n;
  mean.mse /= n;
  mean.grad /= n;
  mean.j /= n;
  mean.f /= n;
  mean.j_and_f /= n;
  return mean;
}

EvalReport make_report(std::map<std::string, EvalRow> rows, const MetricConfig& cfg,
                       std::string input_descriptor) {
  EvalReport report;
  report.aggregate = aggregate_rows(rows);
  report.per_clip = std::move(rows);
  report.config = cfg;
  report.input_descriptor = std::move(input_descriptor);
  return report;
}

namespace {

nlohmann::json row_json(const EvalRow& row) {
  nlohmann::json j = nlohmann::json::object();
  const auto values = row.values();
  for (std::size_t i = 0; i < values.size(); ++i) j[EvalRow::kColumns[i]] = values[i];
  return j;
}

}  // namespace

std::string report_to_json(const EvalReport& report) {
  nlohmann::json doc;
  doc["input_descriptor"] = report.input_descriptor;
  doc["config"] = {{"scale", report.config.scale},
                   {"madt_kernel", report.config.madt_kernel},
                   {"grad_sigma", report.config.grad_sigma},
                   {"boundary_tolerance_fraction", report.config.boundary_tolerance_fraction},
                   {"binarize_threshold", report.config.binarize_threshold}};
  doc["per_clip"] = nlohmann::json::object();
  for (const auto& [id, row] : report.per_clip) doc["per_clip"][id] = row_json(row);
  doc["aggregate"] = row_json(report.aggregate);
  return doc.dump(2) + "\n";
}

std::string report_to_csv(const EvalReport& report) {
  std::ostringstream out;
  out.precision(17);
  out << "clip_id";
  for (const char* c : EvalRow::kColumns) out << ',' << c;
  out << '\n';
  for (const auto& [id, row] : report.per_clip) {
    out << id;
    for (double v : row.values()) out << ',' << v;
    out << '\n';
  }
  return out.str();
}

}  // namespace mattekit
