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

// Brute-force metric references.

#pragma once

#include <cmath>
#include <vector>

#include "mattekit/image.hpp"

namespace mattekit::oracle {

inline double mad(const MatteSequence& p, const MatteSequence& g, double scale) {
  double s = 0.0;
  long long n = 0;
  for (std::size_t t = 0; t < g.size(); ++t)
    for (int y = 0; y < g.height(); ++y)
      for (int x = 0; x < g.width(); ++x, ++n) s += std::fabs(p[t](y, x) - g[t](y, x));
  return s / n * scale;
}

inline double mse(const MatteSequence& p, const MatteSequence& g, double scale) {
  double s = 0.0;
  long long n = 0;
  for (std::size_t t = 0; t < g.size(); ++t)
    for (int y = 0; y < g.height(); ++y)
      for (int x = 0; x < g.width(); ++x, ++n) {
        const double d = p[t](y, x) - g[t](y, x);
        s += d * d;
      }
  return s / n * scale;
}

// Mirror without repeating the edge sample: -1 -> 1, n -> n-2.
inline int mirror(int i, int n) {
  if (n == 1) return 0;
  while (i < 0 || i >= n) {
    if (i < 0) i = -i;
    if (i >= n) i = 2 * (n - 1) - i;
  }
  return i;
}

// Full 2D kernels built directly, then a direct double sum per pixel.
inline AlphaPlane gradient_magnitude(const AlphaPlane& img, double sigma) {
  const int r = static_cast<int>(std::ceil(3 * sigma));
  const int n = 2 * r + 1;
  std::vector<double> g(n), dg(n);
  double ng = 0, ndg = 0;
  for (int i = 0; i < n; ++i) {
    const double x = i - r;
    g[i] = std::exp(-x * x / (2 * sigma * sigma));
    dg[i] = -x * g[i] / (sigma * sigma);
    ng += g[i] * g[i];
    ndg += dg[i] * dg[i];
  }
  for (int i = 0; i < n; ++i) {
    g[i] /= std::sqrt(ng);
    dg[i] /= std::sqrt(ndg);
  }
  std::vector<std::vector<double>> kx(n, std::vector<double>(n)), ky = kx;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      kx[a][b] = g[a] * dg[b];  // row offset a, column offset b
      ky[a][b] = dg[a] * g[b];
    }
  AlphaPlane out(img.height(), img.width());
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x) {
      double gx = 0, gy = 0;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          const double v = img(mirror(y + a - r, img.height()), mirror(x + b - r, img.width()));
          gx += kx[a][b] * v;
          gy += ky[a][b] * v;
        }
      out(y, x) = std::sqrt(gx * gx + gy * gy);
    }
  return out;
}

inline double gradient_error(const MatteSequence& p, const MatteSequence& g, double sigma,
                             double scale) {
  double total = 0.0;
  for (std::size_t t = 0; t < g.size(); ++t) {
    const AlphaPlane a = oracle::gradient_magnitude(p[t], sigma);
    const AlphaPlane b = oracle::gradient_magnitude(g[t], sigma);
    double s = 0.0;
    for (int y = 0; y < a.height(); ++y)
      for (int x = 0; x < a.width(); ++x) s += (a(y, x) - b(y, x)) * (a(y, x) - b(y, x));
    total += s / (a.height() * a.width());
  }
  return total / g.size() * scale;
}

inline double jaccard(const MaskSequence& p, const MaskSequence& g) {
  double total = 0.0;
  for (std::size_t t = 0; t < g.size(); ++t) {
    long long inter = 0, uni = 0;
    for (int y = 0; y < g.height(); ++y)
      for (int x = 0; x < g.width(); ++x) {
        inter += p[t](y, x) && g[t](y, x);
        uni += p[t](y, x) || g[t](y, x);
      }
    total += uni == 0 ? 1.0 : double(inter) / double(uni);
  }
  return total / g.size() * 100.0;
}

inline bool on_boundary(const BinaryPlane& m, int y, int x) {
  if (!m(y, x)) return false;
  const int ny[4] = {y - 1, y + 1, y, y};
  const int nx[4] = {x, x, x - 1, x + 1};
  for (int i = 0; i < 4; ++i) {
    if (ny[i] < 0 || ny[i] >= m.height() || nx[i] < 0 || nx[i] >= m.width()) return true;
    if (!m(ny[i], nx[i])) return true;
  }
  return false;
}

// Fraction of boundary pixels of `a` that have some boundary pixel of `b`
// within Euclidean distance `tol`. Pair search over all boundary pixels.
inline double matched_fraction(const BinaryPlane& a, const BinaryPlane& b, int tol) {
  std::vector<std::pair<int, int>> pa, pb;
  for (int y = 0; y < a.height(); ++y)
    for (int x = 0; x < a.width(); ++x) {
      if (on_boundary(a, y, x)) pa.emplace_back(y, x);
      if (on_boundary(b, y, x)) pb.emplace_back(y, x);
    }
  long long hit = 0;
  for (auto [y, x] : pa)
    for (auto [v, u] : pb)
      if ((y - v) * (y - v) + (x - u) * (x - u) <= tol * tol) {
        ++hit;
        break;
      }
  return double(hit) / double(pa.size());
}

inline double boundary_f_frame(const BinaryPlane& p, const BinaryPlane& g, int tol) {
  long long np = 0, ng = 0;
  for (int y = 0; y < g.height(); ++y)
    for (int x = 0; x < g.width(); ++x) {
      np += on_boundary(p, y, x);
      ng += on_boundary(g, y, x);
    }
  if (np == 0 && ng == 0) return 1.0;
  if (np == 0 || ng == 0) return 0.0;
  const double prec = matched_fraction(p, g, tol);
  const double rec = matched_fraction(g, p, tol);
  return prec + rec == 0 ? 0.0 : 2 * prec * rec / (prec + rec);
}

inline double boundary_f(const MaskSequence& p, const MaskSequence& g, double fraction) {
  const int tol = static_cast<int>(
      std::floor(fraction * std::sqrt(double(g.height()) * g.height() + double(g.width()) * g.width()) +
                 0.5));
  double total = 0.0;
  for (std::size_t t = 0; t < g.size(); ++t) total += oracle::boundary_f_frame(p[t], g[t], tol);
  return total / g.size() * 100.0;
}

}  // namespace mattekit::oracle
