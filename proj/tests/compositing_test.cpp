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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "mattekit/compositing.hpp"
#include "oracles/random_inputs.hpp"

using namespace mattekit;

namespace {

FrameSequence solid(int t, int h, int w, Rgb c) {
  return FrameSequence(std::vector<RgbPlane>(t, RgbPlane(h, w, c)));
}

MatteSequence flat(int t, int h, int w, double a) {
  return MatteSequence(std::vector<AlphaPlane>(t, AlphaPlane(h, w, a)));
}

RgbPlane random_rgb(std::mt19937& rng, int h, int w) {
  RgbPlane p(h, w);
  for (auto& px : p.pixels())
    for (auto& c : px) c = static_cast<std::uint8_t>(rng() % 256);
  return p;
}

}  // namespace

TEST(Composite, AlphaOneGivesForeground) {
  std::mt19937 rng(1);
  const FrameSequence f(std::vector<RgbPlane>{random_rgb(rng, 5, 6)});
  const FrameSequence b(std::vector<RgbPlane>{random_rgb(rng, 5, 6)});
  EXPECT_EQ(composite({f, b, flat(1, 5, 6, 1.0)}), f);
  EXPECT_EQ(composite({f, b, flat(1, 5, 6, 0.0)}), b);
}

TEST(Composite, HalfBlend) {
  const FrameSequence out =
      composite({solid(1, 2, 2, {200, 200, 200}), solid(1, 2, 2, {100, 100, 100}), flat(1, 2, 2, 0.5)});
  EXPECT_EQ(out[0](1, 1), (Rgb{150, 150, 150}));
}

TEST(Composite, RoundsHalfAwayFromZero) {
  // 0.5 * 1 + 0.5 * 0 = 0.5 -> 1
  const FrameSequence out =
      composite({solid(1, 1, 1, {1, 3, 0}), solid(1, 1, 1, {0, 0, 0}), flat(1, 1, 1, 0.5)});
  EXPECT_EQ(out[0](0, 0), (Rgb{1, 2, 0}));
}

TEST(Composite, ShapeMismatch) {
  EXPECT_THROW(composite({solid(1, 2, 2, {}), solid(1, 2, 3, {}), flat(1, 2, 2, 0.5)}), Error);
  EXPECT_THROW(composite({solid(2, 2, 2, {}), solid(2, 2, 2, {}), flat(1, 2, 2, 0.5)}), Error);
}

TEST(Composite, MatchesPixelLoopOracle) {
  std::mt19937 rng(2);
  const RgbPlane f = random_rgb(rng, 7, 9), b = random_rgb(rng, 7, 9);
  const AlphaPlane a = mattekit::testing::random_uniform_plane(rng, 7, 9);
  const RgbPlane out = composite_plane(f, b, a);
  for (int y = 0; y < 7; ++y)
    for (int x = 0; x < 9; ++x)
      for (int c = 0; c < 3; ++c) {
        const double v = a(y, x) * f(y, x)[c] + (1 - a(y, x)) * b(y, x)[c];
        EXPECT_EQ(out(y, x)[c], static_cast<int>(std::floor(v + 0.5)));
      }
}

TEST(Composite, MonotoneInAlphaWhenForegroundBrighter) {
  const RgbPlane f(1, 1, Rgb{250, 180, 90});
  const RgbPlane b(1, 1, Rgb{10, 20, 90});
  Rgb prev{0, 0, 0};
  for (int i = 0; i <= 100; ++i) {
    const RgbPlane out = composite_plane(f, b, AlphaPlane(1, 1, i / 100.0));
    for (int c = 0; c < 3; ++c) EXPECT_GE(out(0, 0)[c], prev[c]);
    prev = out(0, 0);
  }
}

TEST(Composite, SwapSymmetry) {
  std::mt19937 rng(4);
  const RgbPlane f = random_rgb(rng, 8, 8), b = random_rgb(rng, 8, 8);
  const AlphaPlane a = mattekit::testing::random_uniform_plane(rng, 8, 8);
  AlphaPlane inv(8, 8);
  for (std::size_t i = 0; i < a.size(); ++i) inv.pixels()[i] = 1.0 - a.pixels()[i];
  EXPECT_EQ(composite_plane(f, b, a), composite_plane(b, f, inv));
}

TEST(SolveAlpha, QuarterRoundTrip) {
  const FrameSequence f = solid(1, 3, 3, {240, 30, 100});
  const FrameSequence b = solid(1, 3, 3, {20, 200, 100});
  const FrameSequence img = composite({f, b, flat(1, 3, 3, 0.25)});
  const AlphaSolution s = solve_alpha(img, f, b);
  for (double v : s.alpha[0].pixels()) EXPECT_LE(std::abs(v - 0.25), 1.0 / 255.0);
  EXPECT_EQ(s.degenerate_pixels, std::vector<std::size_t>{0});
}

TEST(SolveAlpha, DegenerateIsZeroAndCounted) {
  const FrameSequence f = solid(2, 2, 3, {7, 7, 7});
  const AlphaSolution s = solve_alpha(solid(2, 2, 3, {50, 50, 50}), f, f);
  for (const auto& frame : s.alpha)
    for (double v : frame.pixels()) EXPECT_EQ(v, 0.0);
  EXPECT_EQ(s.degenerate_pixels, (std::vector<std::size_t>{6, 6}));
}

TEST(SolveAlpha, ImageEqualsForeground) {
  const FrameSequence f = solid(1, 2, 2, {9, 99, 199});
  const FrameSequence b = solid(1, 2, 2, {0, 100, 250});
  const AlphaSolution s = solve_alpha(f, f, b);
  for (double v : s.alpha[0].pixels()) EXPECT_EQ(v, 1.0);
}

TEST(SolveAlpha, ClampsOutOfRange) {
  const FrameSequence f = solid(1, 1, 1, {100, 100, 100});
  const FrameSequence b = solid(1, 1, 1, {50, 50, 50});
  EXPECT_EQ(solve_alpha(solid(1, 1, 1, {200, 200, 200}), f, b).alpha[0](0, 0), 1.0);
  EXPECT_EQ(solve_alpha(solid(1, 1, 1, {0, 0, 0}), f, b).alpha[0](0, 0), 0.0);
}

TEST(SolveAlpha, MatchesLeastSquaresFormula) {
  std::mt19937 rng(6);
  const RgbPlane f = random_rgb(rng, 6, 6), b = random_rgb(rng, 6, 6), i = random_rgb(rng, 6, 6);
  const AlphaSolution s = solve_alpha(FrameSequence(std::vector<RgbPlane>{i}),
                                      FrameSequence(std::vector<RgbPlane>{f}),
                                      FrameSequence(std::vector<RgbPlane>{b}));
  for (int y = 0; y < 6; ++y)
    for (int x = 0; x < 6; ++x) {
      double num = 0, den = 0;
      for (int c = 0; c < 3; ++c) {
        num += (i(y, x)[c] - b(y, x)[c]) * double(f(y, x)[c] - b(y, x)[c]);
        den += double(f(y, x)[c] - b(y, x)[c]) * (f(y, x)[c] - b(y, x)[c]);
      }
      const double want = den == 0 ? 0.0 : std::min(1.0, std::max(0.0, num / den));
      EXPECT_NEAR(s.alpha[0](y, x), want, 1e-15);
    }
}
