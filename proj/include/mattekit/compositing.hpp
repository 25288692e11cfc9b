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

#include <cstddef>
#include <vector>

#include "mattekit/image.hpp"

namespace mattekit {

/// Foreground, background and alpha of one clip; all three share T, H, W.
struct CompositeInputs {
  FrameSequence foreground;
  FrameSequence background;
  MatteSequence alpha;
};

/// I = alpha * F + (1 - alpha) * B per pixel and channel, evaluated in double
/// and quantized once with round-half-away-from-zero.
FrameSequence composite(const CompositeInputs& inputs);

RgbPlane composite_plane(const RgbPlane& foreground, const RgbPlane& background,
                         const AlphaPlane& alpha);

struct AlphaSolution {
  MatteSequence alpha;
  /// Per frame, the number of pixels where F == B and alpha was set to 0.
  std::vector<std::size_t> degenerate_pixels;
};

/// Least-squares inversion of the compositing equation over the three
/// channels, clamped to [0, 1]. Pixels with F == B yield alpha 0.
AlphaSolution solve_alpha(const FrameSequence& image, const FrameSequence& foreground,
                          const FrameSequence& background);

}  // namespace mattekit
