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

#include "mattekit/core_io.hpp"
#include "mattekit/image.hpp"

namespace mattekit {

inline constexpr int kDefaultTrimapKernel = 10;

/// Binary structuring element with its anchor cell.
class StructuringElement {
 public:
  /// Anchor defaults to (floor((rows-1)/2), floor((cols-1)/2)).
  explicit StructuringElement(BinaryPlane cells);
  StructuringElement(BinaryPlane cells, int anchor_row, int anchor_col);

  const BinaryPlane& cells() const { return cells_; }
  int anchor_row() const { return anchor_row_; }
  int anchor_col() const { return anchor_col_; }
  int rows() const { return cells_.height(); }
  int cols() const { return cells_.width(); }

 private:
  BinaryPlane cells_;
  int anchor_row_ = 0;
  int anchor_col_ = 0;
};

/// k x k ellipse: cell (r, c) is set iff
/// ((c - (k-1)/2)^2 + (r - (k-1)/2)^2) / (k/2)^2 <= 1.
StructuringElement ellipse_kernel(int k);

/// Binary erosion. Pixels outside the image count as unset, so the result
/// shrinks at the frame border.
BinaryPlane erode(const BinaryPlane& mask, const StructuringElement& se);

/// Pseudo-trimap from ground-truth alpha: pixels whose 8-bit alpha is 255
/// (resp. 0) form the foreground (background) masks, each eroded by a k x k
/// ellipse; everything not in either eroded mask is Unknown.
Trimap make_trimap(const AlphaPlane& alpha_gt, int k = kDefaultTrimapKernel);

/// Number of Unknown pixels.
std::size_t unknown_count(const Trimap& trimap);

}  // namespace mattekit
