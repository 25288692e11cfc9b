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

#include "mattekit/morphology.hpp"

#include <algorithm>
#include <vector>

namespace mattekit {

StructuringElement::StructuringElement(BinaryPlane cells)
    : StructuringElement(cells, (cells.height() - 1) / 2, (cells.width() - 1) / 2) {}

StructuringElement::StructuringElement(BinaryPlane cells, int anchor_row, int anchor_col)
    : cells_(std::move(cells)), anchor_row_(anchor_row), anchor_col_(anchor_col) {
  if (cells_.empty()) throw Error("structuring element is empty");
  if (!cells_.contains(anchor_row_, anchor_col_))
    throw Error("structuring element anchor outside the kernel");
  if (!cells_(anchor_row_, anchor_col_)) throw Error("structuring element anchor cell unset");
  for (auto v : cells_.pixels())
    if (v > 1) throw Error("structuring element is not binary");
}

StructuringElement ellipse_kernel(int k) {
  if (k < 1) throw Error("ellipse kernel size must be >= 1, got " + std::to_string(k));
  // Scaled by 4 so every term is an integer: (2c - (k-1))^2 + (2r - (k-1))^2 <= k^2.
  BinaryPlane cells(k, k);
  const long long k2 = static_cast<long long>(k) * k;
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < k; ++c) {
      const long long dx = 2LL * c - (k - 1);
      const long long dy = 2LL * r - (k - 1);
      cells(r, c) = dx * dx + dy * dy <= k2 ? 1 : 0;
    }
  }
  return StructuringElement(std::move(cells));
}

namespace {

struct Run {
  int dy;     // row offset relative to the anchor
  int first;  // first column offset relative to the anchor
  int length;
};

std::vector<Run> kernel_runs(const StructuringElement& se) {
  std::vector<Run> runs;
  const auto& cells = se.cells();
  for (int r = 0; r < se.rows(); ++r) {
    int c = 0;
    while (c < se.cols()) {
      if (!cells(r, c)) {
        ++c;
        continue;
      }
      const int start = c;
      while (c < se.cols() && cells(r, c)) ++c;
      runs.push_back({r - se.anchor_row(), start - se.anchor_col(), c - start});
    }
  }
  return runs;
}

}  // namespace

BinaryPlane erode(const BinaryPlane& mask, const StructuringElement& se) {
  const int h = mask.height();
  const int w = mask.width();
  // prefix(y, x) = number of set pixels in row y before column x.
  std::vector<int> prefix(static_cast<std::size_t>(h) * (w + 1), 0);
  for (int y = 0; y < h; ++y) {
    int* row = prefix.data() + static_cast<std::size_t>(y) * (w + 1);
    for (int x = 0; x < w; ++x) row[x + 1] = row[x] + (mask(y, x) ? 1 : 0);
  }

  const auto runs = kernel_runs(se);
  BinaryPlane out(h, w, 1);
  for (const Run& run : runs) {
    for (int y = 0; y < h; ++y) {
      const int sy = y + run.dy;
      if (sy < 0 || sy >= h) {
        for (int x = 0; x < w; ++x) out(y, x) = 0;
        continue;
      }
      const int* row = prefix.data() + static_cast<std::size_t>(sy) * (w + 1);
      for (int x = 0; x < w; ++x) {
        if (!out(y, x)) continue;
        const int x0 = x + run.first;
        const int x1 = x0 + run.length;  // exclusive
        if (x0 < 0 || x1 > w || row[x1] - row[x0] != run.length) out(y, x) = 0;
      }
    }
  }
  return out;
}

Trimap make_trimap(const AlphaPlane& alpha_gt, int k) {
  const StructuringElement kernel = ellipse_kernel(k);
  BinaryPlane fg(alpha_gt.height(), alpha_gt.width());
  BinaryPlane bg(alpha_gt.height(), alpha_gt.width());
  const auto a = alpha_gt.pixels();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::uint8_t byte = quantize_unit(a[i]);
    fg.pixels()[i] = byte == 255;
    bg.pixels()[i] = byte == 0;
  }
  const BinaryPlane certain_fg = erode(fg, kernel);
  const BinaryPlane certain_bg = erode(bg, kernel);

  Trimap trimap(alpha_gt.height(), alpha_gt.width(), TrimapLabel::Unknown);
  auto labels = trimap.pixels();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (certain_fg.pixels()[i]) labels[i] = TrimapLabel::Foreground;
    else if (certain_bg.pixels()[i]) labels[i] = TrimapLabel::Background;
  }
  return trimap;
}

std::size_t unknown_count(const Trimap& trimap) {
  return static_cast<std::size_t>(
      std::count(trimap.pixels().begin(), trimap.pixels().end(), TrimapLabel::Unknown));
}

}  // namespace mattekit
