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

#include "mattekit/compositing.hpp"

#include <algorithm>
#include <cmath>

namespace mattekit {

RgbPlane composite_plane(const RgbPlane& foreground, const RgbPlane& background,
                         const AlphaPlane& alpha) {
  if (!foreground.same_shape(background) || !foreground.same_shape(alpha))
    throw Error("composite: shape mismatch");
  RgbPlane out(alpha.height(), alpha.width());
  const auto f = foreground.pixels();
  const auto b = background.pixels();
  const auto a = alpha.pixels();
  auto o = out.pixels();
  for (std::size_t i = 0; i < o.size(); ++i) {
    for (int c = 0; c < 3; ++c) {
      const double v = a[i] * f[i][c] + (1.0 - a[i]) * b[i][c];
      o[i][c] = static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 255.0)));
    }
  }
  return out;
}

FrameSequence composite(const CompositeInputs& inputs) {
  require_same_shape(inputs.foreground, inputs.background, "composite");
  require_same_shape(inputs.foreground, inputs.alpha, "composite");
  std::vector<RgbPlane> frames;
  frames.reserve(inputs.alpha.size());
  for (std::size_t t = 0; t < inputs.alpha.size(); ++t)
    frames.push_back(composite_plane(inputs.foreground[t], inputs.background[t], inputs.alpha[t]));
  return FrameSequence(std::move(frames));
}

AlphaSolution solve_alpha(const FrameSequence& image, const FrameSequence& foreground,
                          const FrameSequence& background) {
  require_same_shape(image, foreground, "solve_alpha");
  require_same_shape(image, background, "solve_alpha");
  std::vector<AlphaPlane> frames;
  std::vector<std::size_t> degenerate;
  frames.reserve(image.size());
  for (std::size_t t = 0; t < image.size(); ++t) {
    AlphaPlane alpha(image.height(), image.width());
    std::size_t count = 0;
    const auto in = image[t].pixels();
    const auto f = foreground[t].pixels();
    const auto b = background[t].pixels();
    auto out = alpha.pixels();
    for (std::size_t i = 0; i < out.size(); ++i) {
      double num = 0.0;
      double den = 0.0;
      for (int c = 0; c < 3; ++c) {
        const double fb = double(f[i][c]) - double(b[i][c]);
        num += (double(in[i][c]) - double(b[i][c])) * fb;
        den += fb * fb;
      }
      if (den == 0.0) {
        out[i] = 0.0;
        ++count;
      } else {
        out[i] = std::clamp(num / den, 0.0, 1.0);
      }
    }
    frames.push_back(std::move(alpha));
    degenerate.push_back(count);
  }
  return {MatteSequence(std::move(frames)), std::move(degenerate)};
}

}  // namespace mattekit
