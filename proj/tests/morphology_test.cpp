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

#include <random>

#include "mattekit/morphology.hpp"
#include "oracles/random_inputs.hpp"
#include "oracles/trimap_oracle.hpp"

using namespace mattekit;

namespace {

oracle::Grid cells_of(const StructuringElement& se) { return oracle::to_grid(se.cells()); }

}  // namespace

TEST(Ellipse, OneIsSingleCell) {
  const StructuringElement se = ellipse_kernel(1);
  EXPECT_EQ(se.rows(), 1);
  EXPECT_EQ(se.cells()(0, 0), 1);
}

TEST(Ellipse, ThreeIsFull) {
  const StructuringElement se = ellipse_kernel(3);
  for (auto v : se.cells().pixels()) EXPECT_EQ(v, 1);
}

TEST(Ellipse, MatchesRealFormulaForManySizes) {
  for (int k = 1; k <= 40; ++k) {
    EXPECT_EQ(cells_of(ellipse_kernel(k)), oracle::ellipse(k)) << "k=" << k;
  }
}

TEST(Ellipse, AnchorAndSymmetry) {
  for (int k : {2, 5, 10, 11}) {
    const StructuringElement se = ellipse_kernel(k);
    EXPECT_EQ(se.anchor_row(), (k - 1) / 2);
    EXPECT_EQ(se.anchor_col(), (k - 1) / 2);
    EXPECT_EQ(se.cells()(se.anchor_row(), se.anchor_col()), 1);
    for (int r = 0; r < k; ++r)
      for (int c = 0; c < k; ++c) {
        const auto v = se.cells()(r, c);
        EXPECT_EQ(v, se.cells()(k - 1 - r, c));
        EXPECT_EQ(v, se.cells()(r, k - 1 - c));
        EXPECT_EQ(v, se.cells()(c, k - 1 - r));  // 90 degree rotation
      }
  }
}

TEST(Ellipse, RejectsNonPositive) {
  EXPECT_THROW(ellipse_kernel(0), Error);
  EXPECT_THROW(ellipse_kernel(-3), Error);
}

TEST(StructuringElementTest, Invariants) {
  EXPECT_THROW(StructuringElement{BinaryPlane(3, 3, 0)}, Error);
  BinaryPlane c(3, 3, 0);
  c(0, 0) = 1;
  EXPECT_THROW(StructuringElement{c}, Error);  // anchor (1,1) unset
  EXPECT_NO_THROW(StructuringElement(c, 0, 0));
}

TEST(Erode, BorderRuleOnThreeByThree) {
  const BinaryPlane out = erode(BinaryPlane(3, 3, 1), StructuringElement(BinaryPlane(3, 3, 1)));
  for (int y = 0; y < 3; ++y)
    for (int x = 0; x < 3; ++x) EXPECT_EQ(out(y, x), (y == 1 && x == 1) ? 1 : 0);
}

TEST(Erode, EmptyStaysEmpty) {
  const BinaryPlane out = erode(BinaryPlane(9, 9, 0), ellipse_kernel(4));
  for (auto v : out.pixels()) EXPECT_EQ(v, 0);
}

TEST(Erode, MatchesNaiveOnRandomMasks) {
  std::mt19937 rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const int k = 1 + static_cast<int>(rng() % 12);
    const BinaryPlane m = trial % 2 ? mattekit::testing::random_noise_mask(rng, 32, 32, 0.8)
                                    : mattekit::testing::random_blob_mask(rng, 32, 32, 4);
    EXPECT_EQ(oracle::to_grid(erode(m, ellipse_kernel(k))), oracle::erode(oracle::to_grid(m), oracle::ellipse(k)))
        << "trial " << trial << " k=" << k;
  }
}

TEST(Erode, ArbitraryKernelAndAnchor) {
  std::mt19937 rng(22);
  for (int trial = 0; trial < 10; ++trial) {
    BinaryPlane cells = mattekit::testing::random_noise_mask(rng, 3, 5, 0.6);
    cells(1, 2) = 1;
    const BinaryPlane m = mattekit::testing::random_noise_mask(rng, 20, 17, 0.85);
    const BinaryPlane got = erode(m, StructuringElement(cells));
    EXPECT_EQ(oracle::to_grid(got), oracle::erode(oracle::to_grid(m), oracle::to_grid(cells)));
  }
}

TEST(Erode, AntiExtensiveAndMonotone) {
  std::mt19937 rng(23);
  const StructuringElement se = ellipse_kernel(5);
  for (int trial = 0; trial < 10; ++trial) {
    const BinaryPlane big = mattekit::testing::random_blob_mask(rng, 24, 24, 5);
    BinaryPlane small = big;
    for (auto& v : small.pixels())
      if (rng() % 4 == 0) v = 0;
    const BinaryPlane eb = erode(big, se), es = erode(small, se);
    for (std::size_t i = 0; i < big.size(); ++i) {
      EXPECT_LE(eb.pixels()[i], big.pixels()[i]);
      EXPECT_LE(es.pixels()[i], eb.pixels()[i]);
    }
  }
}

TEST(Trimap, AllOneHasBorderBandOnly) {
  const Trimap t = make_trimap(AlphaPlane(32, 32, 1.0), 10);
  const oracle::Grid want = oracle::trimap(AlphaPlane(32, 32, 1.0), 10);
  std::size_t bg = 0;
  for (int y = 0; y < 32; ++y)
    for (int x = 0; x < 32; ++x) {
      EXPECT_EQ(static_cast<int>(t(y, x)), want[y][x]);
      bg += t(y, x) == TrimapLabel::Background;
    }
  EXPECT_EQ(bg, 0u);
  EXPECT_EQ(t(0, 0), TrimapLabel::Unknown);
  EXPECT_EQ(t(16, 16), TrimapLabel::Foreground);
}

TEST(Trimap, AllHalfIsUnknown) {
  const Trimap t = make_trimap(AlphaPlane(16, 16, 0.5), 10);
  EXPECT_EQ(unknown_count(t), 256u);
}

TEST(Trimap, HardSquareMatchesTrace) {
  AlphaPlane a(32, 32, 0.0);
  for (int y = 6; y < 26; ++y)
    for (int x = 6; x < 26; ++x) a(y, x) = 1.0;
  const Trimap t = make_trimap(a, 10);
  const oracle::Grid want = oracle::trimap(a, 10);
  for (int y = 0; y < 32; ++y)
    for (int x = 0; x < 32; ++x) EXPECT_EQ(static_cast<int>(t(y, x)), want[y][x]);
}

TEST(Trimap, ExactBytesOnly) {
  // 254.6/255 quantizes to 255, 0.4/255 to 0; 254.4/255 is neither.
  AlphaPlane a(1, 3);
  a(0, 0) = 254.6 / 255.0;
  a(0, 1) = 0.4 / 255.0;
  a(0, 2) = 254.4 / 255.0;
  const Trimap t = make_trimap(a, 1);
  EXPECT_EQ(t(0, 0), TrimapLabel::Foreground);
  EXPECT_EQ(t(0, 1), TrimapLabel::Background);
  EXPECT_EQ(t(0, 2), TrimapLabel::Unknown);
}

TEST(Trimap, RandomMattesMatchTraceAndPartition) {
  std::mt19937 rng(24);
  for (int trial = 0; trial < 20; ++trial) {
    const AlphaPlane a = mattekit::testing::random_matte(rng, 40, 36);
    const int k = 1 + static_cast<int>(rng() % 12);
    const Trimap t = make_trimap(a, k);
    const oracle::Grid want = oracle::trimap(a, k);
    for (int y = 0; y < 40; ++y)
      for (int x = 0; x < 36; ++x) {
        const auto v = static_cast<int>(t(y, x));
        EXPECT_TRUE(v == 0 || v == 128 || v == 255);
        EXPECT_EQ(v, want[y][x]);
      }
  }
}
