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

#include "mattekit/losses.hpp"

#include <array>
#include <cmath>

namespace mattekit {
namespace {

constexpr std::array<double, 5> kBurtAdelson = {1.0 / 16, 4.0 / 16, 6.0 / 16, 4.0 / 16, 1.0 / 16};

int reflect101(int i, int n) {
  if (n == 1) return 0;
  const int period = 2 * (n - 1);
  i %= period;
  if (i < 0) i += period;
  return i < n ? i : period - i;
}

double sign(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

void require_same(const AlphaPlane& a, const AlphaPlane& b, const char* what) {
  if (!a.same_shape(b))
    throw Error(std::string(what) + ": shape mismatch (" + shape_string(a) + " vs " +
                shape_string(b) + ")");
}

// The pyramid is built from two 1D linear maps applied along rows and then
// columns; each has an explicit adjoint so the loss gradient is exact.

enum class Axis { Rows, Cols };

AlphaPlane blur_axis(const AlphaPlane& in, Axis axis) {
  AlphaPlane out(in.height(), in.width());
  for (int y = 0; y < in.height(); ++y)
    for (int x = 0; x < in.width(); ++x) {
      double acc = 0.0;
      for (int k = -2; k <= 2; ++k) {
        const double v = axis == Axis::Rows ? in(y, reflect101(x + k, in.width()))
                                            : in(reflect101(y + k, in.height()), x);
        acc += kBurtAdelson[k + 2] * v;
      }
      out(y, x) = acc;
    }
  return out;
}

AlphaPlane blur_axis_adjoint(const AlphaPlane& in, Axis axis) {
  AlphaPlane out(in.height(), in.width());
  for (int y = 0; y < in.height(); ++y)
    for (int x = 0; x < in.width(); ++x)
      for (int k = -2; k <= 2; ++k) {
        const double v = kBurtAdelson[k + 2] * in(y, x);
        if (axis == Axis::Rows) out(y, reflect101(x + k, in.width())) += v;
        else out(reflect101(y + k, in.height()), x) += v;
      }
  return out;
}

AlphaPlane blur(const AlphaPlane& in) { return blur_axis(blur_axis(in, Axis::Rows), Axis::Cols); }

AlphaPlane blur_adjoint(const AlphaPlane& in) {
  return blur_axis_adjoint(blur_axis_adjoint(in, Axis::Cols), Axis::Rows);
}

AlphaPlane decimate(const AlphaPlane& in) {
  AlphaPlane out((in.height() + 1) / 2, (in.width() + 1) / 2);
  for (int y = 0; y < out.height(); ++y)
    for (int x = 0; x < out.width(); ++x) out(y, x) = in(2 * y, 2 * x);
  return out;
}

// Zero insertion; also the adjoint of decimate.
AlphaPlane zero_insert(const AlphaPlane& in, int height, int width) {
  AlphaPlane out(height, width);
  for (int y = 0; y < in.height(); ++y)
    for (int x = 0; x < in.width(); ++x) out(2 * y, 2 * x) = in(y, x);
  return out;
}

AlphaPlane reduce(const AlphaPlane& in) { return decimate(blur(in)); }

AlphaPlane reduce_adjoint(const AlphaPlane& grad, int height, int width) {
  return blur_adjoint(zero_insert(grad, height, width));
}

AlphaPlane expand(const AlphaPlane& in, int height, int width) {
  AlphaPlane out = blur(zero_insert(in, height, width));
  for (double& v : out.pixels()) v *= 4.0;
  return out;
}

AlphaPlane expand_adjoint(const AlphaPlane& grad) {
  AlphaPlane out = decimate(blur_adjoint(grad));
  for (double& v : out.pixels()) v *= 4.0;
  return out;
}

void check_pyramid_size(const AlphaPlane& image, int levels) {
  if (levels < 1) throw Error("pyramid levels must be >= 1");
  if (levels > 30) throw Error("pyramid levels too large");
  const int need = 1 << levels;
  if (image.height() < need || image.width() < need)
    throw Error("frame " + shape_string(image) + " too small for " + std::to_string(levels) +
                " pyramid levels (needs >= " + std::to_string(need) + " px per side)");
}

}  // namespace

LossValueAndGrad l1_loss(const AlphaPlane& pred, const AlphaPlane& gt) {
  require_same(pred, gt, "l1_loss");
  LossValueAndGrad out{0.0, AlphaPlane(pred.height(), pred.width())};
  const double n = static_cast<double>(pred.size());
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double d = pred.pixels()[i] - gt.pixels()[i];
    out.value += std::abs(d);
    out.grad.pixels()[i] = sign(d) / n;
  }
  out.value /= n;
  return out;
}

std::vector<AlphaPlane> laplacian_bands(const AlphaPlane& image, int levels) {
  check_pyramid_size(image, levels);
  std::vector<AlphaPlane> bands;
  AlphaPlane current = image;
  for (int i = 0; i < levels; ++i) {
    AlphaPlane next = reduce(current);
    AlphaPlane band = expand(next, current.height(), current.width());
    for (std::size_t p = 0; p < band.size(); ++p)
      band.pixels()[p] = current.pixels()[p] - band.pixels()[p];
    bands.push_back(std::move(band));
    current = std::move(next);
  }
  return bands;
}

LossValueAndGrad laplacian_pyramid_loss(const AlphaPlane& pred, const AlphaPlane& gt, int levels) {
  require_same(pred, gt, "laplacian_pyramid_loss");
  const auto pb = laplacian_bands(pred, levels);
  const auto gb = laplacian_bands(gt, levels);

  // Per-band upstream gradients d(loss)/d(band_i).
  LossValueAndGrad out;
  std::vector<AlphaPlane> upstream;
  for (int i = 0; i < levels; ++i) {
    const double weight = std::ldexp(1.0, i);
    const double n = static_cast<double>(pb[i].size());
    AlphaPlane s(pb[i].height(), pb[i].width());
    double band_loss = 0.0;
    for (std::size_t p = 0; p < s.size(); ++p) {
      const double d = pb[i].pixels()[p] - gb[i].pixels()[p];
      band_loss += std::abs(d);
      s.pixels()[p] = weight * sign(d) / n;
    }
    out.value += weight * band_loss / n;
    upstream.push_back(std::move(s));
  }

  // Reverse pass: band_i = g_i - expand(g_{i+1}), g_{i+1} = reduce(g_i).
  std::vector<std::pair<int, int>> sizes;
  for (const auto& b : pb) sizes.emplace_back(b.height(), b.width());
  AlphaPlane carry = AlphaPlane((sizes.back().first + 1) / 2, (sizes.back().second + 1) / 2);
  for (int i = levels - 1; i >= 0; --i) {
    AlphaPlane from_band = expand_adjoint(upstream[i]);
    for (std::size_t p = 0; p < carry.size(); ++p) carry.pixels()[p] -= from_band.pixels()[p];
    AlphaPlane grad_level = reduce_adjoint(carry, sizes[i].first, sizes[i].second);
    for (std::size_t p = 0; p < grad_level.size(); ++p)
      grad_level.pixels()[p] += upstream[i].pixels()[p];
    carry = std::move(grad_level);
  }
  out.grad = std::move(carry);
  return out;
}

LossValueAndGrad mat_loss(const AlphaPlane& pred, const AlphaPlane& gt, double lambda_lap,
                          int levels) {
  if (!(lambda_lap >= 0.0)) throw Error("lambda_lap must be >= 0");
  LossValueAndGrad l1 = l1_loss(pred, gt);
  if (lambda_lap == 0.0) return l1;
  const LossValueAndGrad lap = laplacian_pyramid_loss(pred, gt, levels);
  l1.value += lambda_lap * lap.value;
  for (std::size_t p = 0; p < l1.grad.size(); ++p)
    l1.grad.pixels()[p] += lambda_lap * lap.grad.pixels()[p];
  return l1;
}

MatLossValues mat_loss_values(const MatteSequence& pred, const MatteSequence& gt, double lambda_lap,
                              int levels) {
  require_same_shape(pred, gt, "mat_loss");
  if (!(lambda_lap >= 0.0)) throw Error("lambda_lap must be >= 0");
  MatLossValues v;
  for (std::size_t t = 0; t < pred.size(); ++t) {
    v.l1 += l1_loss(pred[t], gt[t]).value;
    v.laplacian += laplacian_pyramid_loss(pred[t], gt[t], levels).value;
  }
  const double n = static_cast<double>(pred.size());
  v.l1 /= n;
  v.laplacian /= n;
  v.total = v.l1 + lambda_lap * v.laplacian;
  return v;
}

FeatureGrid::FeatureGrid(Plane<double> patches) : patches_(std::move(patches)) {
  if (patches_.height() < 1 || patches_.width() < 1)
    throw Error("feature grid needs at least one patch and one channel");
  for (double v : patches_.pixels())
    if (!std::isfinite(v)) throw Error("feature grid contains a non-finite value");
}

LossValueAndGrad alignment_loss(const FeatureGrid& a, const FeatureGrid& b) {
  if (a.patch_count() != b.patch_count() || a.channels() != b.channels())
    throw Error("alignment_loss: grids differ in shape (" + shape_string(a.patches()) + " vs " +
                shape_string(b.patches()) + ")");
  const int patches = a.patch_count();
  const int dims = a.channels();
  LossValueAndGrad out{0.0, Plane<double>(patches, dims)};
  for (int p = 0; p < patches; ++p) {
    double aa = 0.0, bb = 0.0, ab = 0.0;
    for (int d = 0; d < dims; ++d) {
      const double x = a.patches()(p, d);
      const double y = b.patches()(p, d);
      aa += x * x;
      bb += y * y;
      ab += x * y;
    }
    if (aa == 0.0) throw Error("alignment_loss: patch " + std::to_string(p) + " of grid a has zero norm");
    if (bb == 0.0) throw Error("alignment_loss: patch " + std::to_string(p) + " of grid b has zero norm");
    const double na = std::sqrt(aa);
    const double nb = std::sqrt(bb);
    const double cos = ab / (na * nb);
    out.value -= cos;
    for (int d = 0; d < dims; ++d) {
      const double dcos = b.patches()(p, d) / (na * nb) - cos * a.patches()(p, d) / aa;
      out.grad(p, d) = -dcos / patches;
    }
  }
  out.value /= patches;
  return out;
}

}  // namespace mattekit
