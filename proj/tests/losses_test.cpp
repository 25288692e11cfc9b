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

#include "mattekit/losses.hpp"
#include "oracles/finite_difference.hpp"
#include "oracles/pyramid_oracle.hpp"
#include "oracles/random_inputs.hpp"

using namespace mattekit;
using mattekit::testing::check_gradient;
using mattekit::testing::close_rel;

namespace {

// Signs of band(pred) - band(gt) over every band, flattened.
std::vector<int> band_signs(const AlphaPlane& p, const AlphaPlane& g, int levels) {
  const auto bp = laplacian_bands(p, levels), bg = laplacian_bands(g, levels);
  std::vector<int> s;
  for (std::size_t i = 0; i < bp.size(); ++i)
    for (std::size_t k = 0; k < bp[i].size(); ++k) {
      const double d = bp[i].pixels()[k] - bg[i].pixels()[k];
      s.push_back(d > 0 ? 1 : (d < 0 ? -1 : 0));
    }
  return s;
}

Plane<double> random_features(std::mt19937& rng, int p, int d) {
  return mattekit::testing::random_uniform_plane(rng, p, d, -1.0, 1.0);
}

}  // namespace

TEST(L1, Values) {
  const AlphaPlane a(3, 3, 0.25);
  const auto same = l1_loss(a, a);
  EXPECT_EQ(same.value, 0.0);
  for (double g : same.grad.pixels()) EXPECT_EQ(g, 0.0);

  AlphaPlane p(1, 2), g(1, 2);
  p(0, 0) = 1.0;
  const auto r = l1_loss(p, g);
  EXPECT_EQ(r.value, 0.5);
  EXPECT_EQ(r.grad(0, 0), 0.5);
  EXPECT_EQ(r.grad(0, 1), 0.0);
}

TEST(L1, FiniteDifferences) {
  std::mt19937 rng(51);
  for (int trial = 0; trial < 5; ++trial) {
    const AlphaPlane p = mattekit::testing::random_uniform_plane(rng, 8, 8);
    const AlphaPlane g = mattekit::testing::random_uniform_plane(rng, 8, 8);
    const auto r = l1_loss(p, g);
    const auto rep = check_gradient([&](const Plane<double>& x) { return l1_loss(x, g).value; }, p,
                                    r.grad, [&](std::size_t i) {
                                      return std::abs(p.pixels()[i] - g.pixels()[i]) > 1e-3;
                                    });
    EXPECT_EQ(rep.failures, 0u) << rep.first_failure;
    EXPECT_GT(rep.checked, 0u);
  }
}

TEST(L1, ShapeMismatch) { EXPECT_THROW(l1_loss(AlphaPlane(2, 2), AlphaPlane(2, 3)), Error); }

TEST(Laplacian, BandsMatchDirectTrace) {
  std::mt19937 rng(52);
  for (auto [h, w] : {std::pair{32, 32}, std::pair{37, 45}, std::pair{33, 64}}) {
    const AlphaPlane img = mattekit::testing::random_uniform_plane(rng, h, w);
    const auto got = laplacian_bands(img, 5);
    const auto want = oracle::laplacian(img, 5);
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      ASSERT_TRUE(got[i].same_shape(want[i]));
      for (std::size_t k = 0; k < got[i].size(); ++k)
        EXPECT_NEAR(got[i].pixels()[k], want[i].pixels()[k], 1e-12);
    }
  }
}

TEST(Laplacian, ZeroForEqualInputs) {
  std::mt19937 rng(53);
  const AlphaPlane a = mattekit::testing::random_uniform_plane(rng, 32, 32);
  EXPECT_EQ(laplacian_pyramid_loss(a, a).value, 0.0);
}

TEST(Laplacian, ConstantOffsetMatchesTrace) {
  std::mt19937 rng(54);
  const AlphaPlane g = mattekit::testing::random_uniform_plane(rng, 32, 32, 0.0, 0.7);
  AlphaPlane p = g;
  for (double& v : p.pixels()) v += 0.25;
  const double got = laplacian_pyramid_loss(p, g).value;
  EXPECT_NEAR(got, oracle::laplacian_loss(p, g, 5), 1e-12);
  // bands drop constants, so only rounding noise is left
  EXPECT_LT(got, 1e-12);
}

TEST(Laplacian, RandomValueMatchesTrace) {
  std::mt19937 rng(55);
  for (int trial = 0; trial < 5; ++trial) {
    const AlphaPlane p = mattekit::testing::random_uniform_plane(rng, 40, 36);
    const AlphaPlane g = mattekit::testing::random_uniform_plane(rng, 40, 36);
    for (int levels : {1, 3, 5})
      EXPECT_TRUE(close_rel(laplacian_pyramid_loss(p, g, levels).value,
                            oracle::laplacian_loss(p, g, levels), 1e-12));
  }
}

TEST(Laplacian, SymmetricInArguments) {
  std::mt19937 rng(56);
  const AlphaPlane p = mattekit::testing::random_uniform_plane(rng, 32, 32);
  const AlphaPlane g = mattekit::testing::random_uniform_plane(rng, 32, 32);
  EXPECT_TRUE(close_rel(laplacian_pyramid_loss(p, g).value, laplacian_pyramid_loss(g, p).value, 1e-14));
  EXPECT_TRUE(close_rel(mat_loss(p, g).value, mat_loss(g, p).value, 1e-14));
}

TEST(Laplacian, TooSmallFrame) {
  EXPECT_THROW(laplacian_pyramid_loss(AlphaPlane(31, 64), AlphaPlane(31, 64), 5), Error);
  EXPECT_NO_THROW(laplacian_pyramid_loss(AlphaPlane(8, 8), AlphaPlane(8, 8), 3));
}

TEST(Laplacian, FiniteDifferences) {
  std::mt19937 rng(57);
  for (int trial = 0; trial < 3; ++trial) {
    const AlphaPlane p = mattekit::testing::random_uniform_plane(rng, 32, 32);
    const AlphaPlane g = mattekit::testing::random_uniform_plane(rng, 32, 32);
    const auto r = laplacian_pyramid_loss(p, g);
    const auto base = band_signs(p, g, 5);
    const auto smooth = [&](std::size_t i) {
      for (double h : {mattekit::testing::kFdStep, -mattekit::testing::kFdStep}) {
        AlphaPlane q = p;
        q.pixels()[i] += h;
        if (band_signs(q, g, 5) != base) return false;
      }
      return true;
    };
    const auto rep = check_gradient(
        [&](const Plane<double>& x) { return laplacian_pyramid_loss(x, g).value; }, p, r.grad, smooth);
    EXPECT_EQ(rep.failures, 0u) << rep.first_failure;
    EXPECT_GT(rep.checked, p.size() / 2);
  }
}

TEST(MatLoss, Composition) {
  std::mt19937 rng(58);
  const AlphaPlane p = mattekit::testing::random_uniform_plane(rng, 32, 32);
  const AlphaPlane g = mattekit::testing::random_uniform_plane(rng, 32, 32);
  const auto l1 = l1_loss(p, g);
  const auto lap = laplacian_pyramid_loss(p, g);
  const auto m = mat_loss(p, g, 0.7);
  EXPECT_NEAR(m.value, l1.value + 0.7 * lap.value, 1e-12);
  for (std::size_t i = 0; i < p.size(); ++i)
    EXPECT_NEAR(m.grad.pixels()[i], l1.grad.pixels()[i] + 0.7 * lap.grad.pixels()[i], 1e-15);
  const auto only_l1 = mat_loss(p, g, 0.0);
  EXPECT_EQ(only_l1.value, l1.value);
  EXPECT_EQ(mat_loss(p, p).value, 0.0);
}

TEST(MatLoss, SequenceValues) {
  std::mt19937 rng(59);
  std::vector<AlphaPlane> a, b;
  for (int t = 0; t < 3; ++t) {
    a.push_back(mattekit::testing::random_uniform_plane(rng, 32, 32));
    b.push_back(mattekit::testing::random_uniform_plane(rng, 32, 32));
  }
  const MatLossValues v = mat_loss_values(MatteSequence(a), MatteSequence(b), 2.0);
  double l1 = 0, lap = 0;
  for (int t = 0; t < 3; ++t) {
    l1 += l1_loss(a[t], b[t]).value / 3;
    lap += laplacian_pyramid_loss(a[t], b[t]).value / 3;
  }
  EXPECT_NEAR(v.l1, l1, 1e-12);
  EXPECT_NEAR(v.laplacian, lap, 1e-12);
  EXPECT_NEAR(v.total, l1 + 2.0 * lap, 1e-12);
}

TEST(Alignment, IdenticalIsMinusOne) {
  std::mt19937 rng(60);
  const FeatureGrid a(random_features(rng, 16, 8));
  EXPECT_NEAR(alignment_loss(a, a).value, -1.0, 1e-12);
}

TEST(Alignment, OrthogonalIsZero) {
  Plane<double> a(2, 2), b(2, 2);
  a(0, 0) = 1;
  b(0, 1) = 3;
  a(1, 1) = 2;
  b(1, 0) = -1;
  EXPECT_EQ(alignment_loss(FeatureGrid(a), FeatureGrid(b)).value, 0.0);
}

TEST(Alignment, ScaleInvariant) {
  std::mt19937 rng(61);
  const Plane<double> a = random_features(rng, 16, 8), b = random_features(rng, 16, 8);
  const double base = alignment_loss(FeatureGrid(a), FeatureGrid(b)).value;
  for (double c : {0.001, 0.5, 3.0, 1e4}) {
    Plane<double> ca = a;
    for (double& v : ca.pixels()) v *= c;
    EXPECT_NEAR(alignment_loss(FeatureGrid(ca), FeatureGrid(b)).value, base, 1e-12);
  }
}

TEST(Alignment, FiniteDifferences) {
  std::mt19937 rng(62);
  for (int trial = 0; trial < 5; ++trial) {
    const Plane<double> a = random_features(rng, 16, 8), b = random_features(rng, 16, 8);
    const FeatureGrid gb(b);
    const auto r = alignment_loss(FeatureGrid(a), gb);
    const auto rep = check_gradient(
        [&](const Plane<double>& x) { return alignment_loss(FeatureGrid(x), gb).value; }, a, r.grad,
        [](std::size_t) { return true; });
    EXPECT_EQ(rep.failures, 0u) << rep.first_failure;
  }
}

TEST(Alignment, ZeroRowNamesPatchAndGrid) {
  Plane<double> a(3, 2, 1.0), b(3, 2, 1.0);
  b(2, 0) = 0;
  b(2, 1) = 0;
  try {
    alignment_loss(FeatureGrid(a), FeatureGrid(b));
    FAIL() << "expected an error";
  } catch (const Error& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("patch 2 of grid b"), std::string::npos) << msg;
  }
}

TEST(Alignment, ShapeAndFiniteness) {
  EXPECT_THROW(alignment_loss(FeatureGrid(Plane<double>(2, 3, 1.0)), FeatureGrid(Plane<double>(2, 4, 1.0))),
               Error);
  EXPECT_THROW(FeatureGrid(Plane<double>(0, 3)), Error);
  Plane<double> bad(1, 1, std::nan(""));
  EXPECT_THROW(FeatureGrid{bad}, Error);
}
