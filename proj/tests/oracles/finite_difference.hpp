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

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "mattekit/image.hpp"

namespace mattekit::testing {

inline constexpr double kFdStep = 1e-5;
inline constexpr double kFdRel = 1e-4;

// Central difference of f at coordinate i of x.
inline double central_difference(const std::function<double(const Plane<double>&)>& f,
                                 Plane<double> x, std::size_t i, double h = kFdStep) {
  const double x0 = x.pixels()[i];
  x.pixels()[i] = x0 + h;
  const double up = f(x);
  x.pixels()[i] = x0 - h;
  const double down = f(x);
  return (up - down) / (2 * h);
}

// |a - f| <= rel * max(|a|, |f|) plus a tiny floor for entries that are
// zero analytically and ~1e-12 numerically.
inline bool fd_agrees(double analytic, double numeric, double rel = kFdRel) {
  return std::abs(analytic - numeric) <=
         rel * std::max(std::abs(analytic), std::abs(numeric)) + 1e-9;
}

struct FdReport {
  std::size_t checked = 0;
  std::size_t skipped = 0;
  std::size_t failures = 0;
  std::string first_failure;
};

// Compares grad against central differences at every coordinate for which
// smooth(i) holds.
inline FdReport check_gradient(const std::function<double(const Plane<double>&)>& f,
                               const Plane<double>& x, const Plane<double>& grad,
                               const std::function<bool(std::size_t)>& smooth) {
  FdReport r;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!smooth(i)) {
      ++r.skipped;
      continue;
    }
    ++r.checked;
    const double num = central_difference(f, x, i);
    const double ana = grad.pixels()[i];
    if (!fd_agrees(ana, num)) {
      if (r.failures++ == 0)
        r.first_failure = "index " + std::to_string(i) + ": analytic " + std::to_string(ana) +
                          " numeric " + std::to_string(num);
    }
  }
  return r;
}

}  // namespace mattekit::testing
