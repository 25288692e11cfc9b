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

#include <string>
#include <vector>

#include "mattekit/image.hpp"

namespace mattekit {

inline constexpr double kPolygonEasyEpsilon = 0.01;
inline constexpr double kPolygonHardEpsilon = 0.05;

enum class DegradationKind {
  /// Ground-truth mask passed through unchanged.
  Identity,
  Downsample,
  Polygon,
};

struct DegradationConfig {
  DegradationKind kind = DegradationKind::Identity;
  /// Block size for Downsample; must be >= 2.
  int downsample_factor = 0;
  /// RDP tolerance as a fraction of each contour's perimeter, for Polygon.
  double epsilon_fraction = 0.0;
  std::string level_name;

  static DegradationConfig identity();
  static DegradationConfig downsample(int factor, std::string level_name = {});
  static DegradationConfig polygon(double epsilon_fraction, std::string level_name = {});

  /// level_name, or a generated name such as "downsample_8x" when empty.
  std::string label() const;

  friend bool operator==(const DegradationConfig&, const DegradationConfig&) = default;
};

/// Throws when the fields required by `kind` are missing or out of range,
/// or when fields of another kind are set.
void validate(const DegradationConfig& cfg);

/// down 8x, down 32x, polygon easy, polygon hard.
std::vector<DegradationConfig> standard_degradations();

struct Point {
  int x = 0;
  int y = 0;
  friend bool operator==(const Point&, const Point&) = default;
};

using Contour = std::vector<Point>;

/// Block-centre sampling onto a ceil(H/s) x ceil(W/s) grid followed by
/// pixel replication back to H x W.
BinaryPlane downsample_plane(const BinaryPlane& mask, int factor);

/// Outer boundary of every 8-connected foreground component, traced with
/// Moore-neighbour tracing starting at the component's first pixel in raster
/// order. Pixels may repeat along thin structures.
std::vector<Contour> trace_outer_contours(const BinaryPlane& mask);

/// Closed-curve length with unit and diagonal steps.
double contour_perimeter(const Contour& contour);

/// Ramer-Douglas-Peucker on a closed contour, split at the first point and
/// the point farthest from it. Returns the kept vertices in contour order.
Contour simplify_closed_contour(const Contour& contour, double epsilon);

/// Union of the closed even-odd interiors of the polygons, pixel centres on
/// polygon edges included.
BinaryPlane fill_polygons(const std::vector<Contour>& polygons, int height, int width);

BinaryPlane polygon_plane(const BinaryPlane& mask, double epsilon_fraction);

MaskSequence degrade_downsample(const MaskSequence& m, int factor);
MaskSequence degrade_polygon(const MaskSequence& m, double epsilon_fraction);
MaskSequence apply_degradation(const MaskSequence& m, const DegradationConfig& cfg);

}  // namespace mattekit
