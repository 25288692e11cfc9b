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

#include "mattekit/degradation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>
#include <utility>

namespace mattekit {

DegradationConfig DegradationConfig::identity() { return {}; }

DegradationConfig DegradationConfig::downsample(int factor, std::string level_name) {
  DegradationConfig cfg;
  cfg.kind = DegradationKind::Downsample;
  cfg.downsample_factor = factor;
  cfg.level_name = std::move(level_name);
  return cfg;
}

DegradationConfig DegradationConfig::polygon(double epsilon_fraction, std::string level_name) {
  DegradationConfig cfg;
  cfg.kind = DegradationKind::Polygon;
  cfg.epsilon_fraction = epsilon_fraction;
  cfg.level_name = std::move(level_name);
  return cfg;
}

std::string DegradationConfig::label() const {
  if (!level_name.empty()) return level_name;
  switch (kind) {
    case DegradationKind::Identity:
      return "gt_mask";
    case DegradationKind::Downsample:
      return "downsample_" + std::to_string(downsample_factor) + "x";
    case DegradationKind::Polygon: {
      char buf[64];
      std::snprintf(buf, sizeof buf, "polygon_%g", epsilon_fraction);
      return buf;
    }
  }
  return "unknown";
}

void validate(const DegradationConfig& cfg) {
  switch (cfg.kind) {
    case DegradationKind::Identity:
      if (cfg.downsample_factor != 0 || cfg.epsilon_fraction != 0.0)
        throw Error("identity degradation takes no parameters");
      break;
    case DegradationKind::Downsample:
      if (cfg.downsample_factor < 2)
        throw Error("downsample factor must be >= 2, got " + std::to_string(cfg.downsample_factor));
      if (cfg.epsilon_fraction != 0.0) throw Error("downsample degradation takes no epsilon");
      break;
    case DegradationKind::Polygon:
      if (!(cfg.epsilon_fraction > 0.0) || !std::isfinite(cfg.epsilon_fraction))
        throw Error("polygon epsilon_fraction must be > 0");
      if (cfg.downsample_factor != 0) throw Error("polygon degradation takes no factor");
      break;
  }
  const std::string name = cfg.label();
  for (char c : name) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '_' || c == '-' || c == '.';
    if (!ok) throw Error("degradation label '" + name + "' is not a safe directory name");
  }
}

std::vector<DegradationConfig> standard_degradations() {
  return {DegradationConfig::downsample(8, "down_8x"), DegradationConfig::downsample(32, "down_32x"),
          DegradationConfig::polygon(kPolygonEasyEpsilon, "polygon_easy"),
          DegradationConfig::polygon(kPolygonHardEpsilon, "polygon_hard")};
}

BinaryPlane downsample_plane(const BinaryPlane& mask, int factor) {
  if (factor < 2) throw Error("downsample factor must be >= 2, got " + std::to_string(factor));
  const int h = mask.height();
  const int w = mask.width();
  const int gh = (h + factor - 1) / factor;
  const int gw = (w + factor - 1) / factor;
  BinaryPlane grid(gh, gw);
  for (int i = 0; i < gh; ++i)
    for (int j = 0; j < gw; ++j)
      grid(i, j) = mask(std::min(i * factor + factor / 2, h - 1),
                        std::min(j * factor + factor / 2, w - 1));
  BinaryPlane out(h, w);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) out(y, x) = grid(y / factor, x / factor);
  return out;
}

namespace {

// Clockwise from west, with y pointing down.
constexpr std::array<Point, 8> kNeighbours = {{
    {-1, 0}, {-1, -1}, {0, -1}, {1, -1}, {1, 0}, {1, 1}, {0, 1}, {-1, 1},
}};

int direction_of(int dx, int dy) {
  for (int d = 0; d < 8; ++d)
    if (kNeighbours[d].x == dx && kNeighbours[d].y == dy) return d;
  throw Error("internal: points are not 8-adjacent");
}

bool is_set(const BinaryPlane& mask, int x, int y) { return mask.contains(y, x) && mask(y, x); }

Contour moore_trace(const BinaryPlane& mask, Point start) {
  Contour contour{start};
  Point p = start;
  int backtrack = 0;  // the west neighbour of the first raster pixel is background
  int first_move = -1;
  const std::size_t limit = 8 * mask.size() + 8;
  for (std::size_t step = 0; step < limit; ++step) {
    int move = -1;
    for (int i = 1; i <= 8; ++i) {
      const int d = (backtrack + i) % 8;
      if (is_set(mask, p.x + kNeighbours[d].x, p.y + kNeighbours[d].y)) {
        move = d;
        break;
      }
    }
    if (move < 0) return contour;  // isolated pixel
    if (p == start && move == first_move) {
      contour.pop_back();  // closing revisit of the start pixel
      return contour;
    }
    if (first_move < 0) first_move = move;
    const Point q{p.x + kNeighbours[move].x, p.y + kNeighbours[move].y};
    const int prev = (move + 7) % 8;
    const Point before{p.x + kNeighbours[prev].x, p.y + kNeighbours[prev].y};
    backtrack = direction_of(before.x - q.x, before.y - q.y);
    contour.push_back(q);
    p = q;
  }
  throw Error("internal: boundary tracing did not terminate");
}

double distance_to_segment(Point a, Point b, Point p) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  if (dx == 0.0 && dy == 0.0) return std::hypot(double(p.x - a.x), double(p.y - a.y));
  return std::abs(dx * (p.y - a.y) - dy * (p.x - a.x)) / std::hypot(dx, dy);
}

// RDP over points[first..last] (inclusive); marks kept interior points.
void rdp_open(const Contour& points, std::size_t first, std::size_t last, double epsilon,
              std::vector<bool>& keep) {
  std::vector<std::pair<std::size_t, std::size_t>> stack{{first, last}};
  while (!stack.empty()) {
    const auto [lo, hi] = stack.back();
    stack.pop_back();
    if (hi <= lo + 1) continue;
    double best = -1.0;
    std::size_t split = lo;
    for (std::size_t i = lo + 1; i < hi; ++i) {
      const double d = distance_to_segment(points[lo], points[hi], points[i]);
      if (d > best) {
        best = d;
        split = i;
      }
    }
    if (best > epsilon) {
      keep[split] = true;
      stack.emplace_back(split, hi);
      stack.emplace_back(lo, split);
    }
  }
}

long long floor_div(long long num, long long den) {
  long long q = num / den;
  if ((num % den != 0) && ((num < 0) != (den < 0))) --q;
  return q;
}

long long ceil_div(long long num, long long den) { return -floor_div(-num, den); }

struct Crossing {
  long long num;
  long long den;  // > 0
};

}  // namespace

std::vector<Contour> trace_outer_contours(const BinaryPlane& mask) {
  const int h = mask.height();
  const int w = mask.width();
  std::vector<Contour> contours;
  BinaryPlane visited(h, w);
  std::vector<Point> queue;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!mask(y, x) || visited(y, x)) continue;
      // Flood the component so later raster pixels of it are skipped.
      queue.assign(1, {x, y});
      visited(y, x) = 1;
      for (std::size_t head = 0; head < queue.size(); ++head) {
        const Point p = queue[head];
        for (const Point& d : kNeighbours) {
          const int nx = p.x + d.x;
          const int ny = p.y + d.y;
          if (is_set(mask, nx, ny) && !visited(ny, nx)) {
            visited(ny, nx) = 1;
            queue.push_back({nx, ny});
          }
        }
      }
      contours.push_back(moore_trace(mask, {x, y}));
    }
  }
  return contours;
}

double contour_perimeter(const Contour& contour) {
  double total = 0.0;
  for (std::size_t i = 0; i < contour.size(); ++i) {
    const Point a = contour[i];
    const Point b = contour[(i + 1) % contour.size()];
    total += std::hypot(double(b.x - a.x), double(b.y - a.y));
  }
  return total;
}

Contour simplify_closed_contour(const Contour& contour, double epsilon) {
  const std::size_t n = contour.size();
  if (n < 3) return contour;
  std::size_t far = 0;
  double far_d2 = -1.0;
  for (std::size_t i = 1; i < n; ++i) {
    const double dx = contour[i].x - contour[0].x;
    const double dy = contour[i].y - contour[0].y;
    if (dx * dx + dy * dy > far_d2) {
      far_d2 = dx * dx + dy * dy;
      far = i;
    }
  }
  // Closed curve as an open polyline ending back at the start point.
  Contour ring(contour);
  ring.push_back(contour[0]);
  std::vector<bool> keep(ring.size(), false);
  keep[0] = true;
  keep[far] = true;
  rdp_open(ring, 0, far, epsilon, keep);
  rdp_open(ring, far, n, epsilon, keep);
  Contour out;
  for (std::size_t i = 0; i < n; ++i)
    if (keep[i]) out.push_back(contour[i]);
  return out;
}

BinaryPlane fill_polygons(const std::vector<Contour>& polygons, int height, int width) {
  BinaryPlane out(height, width);
  std::vector<Crossing> crossings;
  for (const Contour& poly : polygons) {
    const std::size_t n = poly.size();
    if (n == 0) continue;
    for (int y = 0; y < height; ++y) {
      crossings.clear();
      for (std::size_t i = 0; i < n; ++i) {
        const Point a = poly[i];
        const Point b = poly[(i + 1) % n];
        if (a.y == b.y) continue;
        if (y < std::min(a.y, b.y) || y >= std::max(a.y, b.y)) continue;
        long long den = b.y - a.y;
        long long num = static_cast<long long>(a.x) * den + static_cast<long long>(y - a.y) * (b.x - a.x);
        if (den < 0) {
          den = -den;
          num = -num;
        }
        crossings.push_back({num, den});
      }
      std::sort(crossings.begin(), crossings.end(), [](const Crossing& l, const Crossing& r) {
        return l.num * r.den < r.num * l.den;
      });
      for (std::size_t i = 0; i + 1 < crossings.size(); i += 2) {
        const long long x0 = std::max<long long>(0, ceil_div(crossings[i].num, crossings[i].den));
        const long long x1 =
            std::min<long long>(width - 1, floor_div(crossings[i + 1].num, crossings[i + 1].den));
        for (long long x = x0; x <= x1; ++x) out(y, static_cast<int>(x)) = 1;
      }
    }
    // Closed region: pixel centres lying exactly on an edge.
    for (std::size_t i = 0; i < n; ++i) {
      const Point a = poly[i];
      const Point b = poly[(i + 1) % n];
      const int dx = b.x - a.x;
      const int dy = b.y - a.y;
      const int steps = std::gcd(std::abs(dx), std::abs(dy));
      if (steps == 0) {
        if (out.contains(a.y, a.x)) out(a.y, a.x) = 1;
        continue;
      }
      for (int s = 0; s <= steps; ++s) {
        const int x = a.x + dx / steps * s;
        const int y = a.y + dy / steps * s;
        if (out.contains(y, x)) out(y, x) = 1;
      }
    }
  }
  return out;
}

BinaryPlane polygon_plane(const BinaryPlane& mask, double epsilon_fraction) {
  if (!(epsilon_fraction > 0.0)) throw Error("polygon epsilon_fraction must be > 0");
  std::vector<Contour> polygons;
  for (const Contour& contour : trace_outer_contours(mask)) {
    std::set<std::pair<int, int>> distinct;
    for (const Point& p : contour) distinct.emplace(p.x, p.y);
    if (distinct.size() < 3) continue;
    const double epsilon = epsilon_fraction * contour_perimeter(contour);
    polygons.push_back(simplify_closed_contour(contour, epsilon));
  }
  return fill_polygons(polygons, mask.height(), mask.width());
}

namespace {

template <typename Fn>
MaskSequence map_frames(const MaskSequence& m, Fn fn) {
  std::vector<BinaryPlane> frames;
  frames.reserve(m.size());
  for (const auto& f : m) frames.push_back(fn(f));
  return MaskSequence(std::move(frames));
}

}  // namespace

MaskSequence degrade_downsample(const MaskSequence& m, int factor) {
  if (factor < 2) throw Error("downsample factor must be >= 2, got " + std::to_string(factor));
  return map_frames(m, [factor](const BinaryPlane& f) { return downsample_plane(f, factor); });
}

MaskSequence degrade_polygon(const MaskSequence& m, double epsilon_fraction) {
  if (!(epsilon_fraction > 0.0)) throw Error("polygon epsilon_fraction must be > 0");
  return map_frames(m, [epsilon_fraction](const BinaryPlane& f) {
    return polygon_plane(f, epsilon_fraction);
  });
}

MaskSequence apply_degradation(const MaskSequence& m, const DegradationConfig& cfg) {
  validate(cfg);
  switch (cfg.kind) {
    case DegradationKind::Identity:
      return m;
    case DegradationKind::Downsample:
      return degrade_downsample(m, cfg.downsample_factor);
    case DegradationKind::Polygon:
      return degrade_polygon(m, cfg.epsilon_fraction);
  }
  throw Error("unknown degradation kind");
}

}  // namespace mattekit
