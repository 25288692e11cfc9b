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

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "mattekit/core_io.hpp"
#include "mattekit/image.hpp"

namespace mattekit {

enum class SynthShape { FeatheredDisk, FeatheredRect };

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

/// A moving constant-colour shape over a constant-colour background. The
/// shape centre at frame t is center_start + t * center_velocity, in pixel
/// coordinates where pixel (x, y) sits at integer position (x, y).
struct SynthSpec {
  int width = 64;
  int height = 64;
  int frame_count = 12;
  SynthShape shape = SynthShape::FeatheredDisk;
  Vec2 center_start{32.0, 32.0};
  Vec2 center_velocity{0.0, 0.0};
  /// Disk radius.
  double radius = 12.0;
  /// Rectangle half-extents along x and y.
  Vec2 half_extents{10.0, 10.0};
  double feather_width = 0.0;
  Rgb fg_color{255, 255, 255};
  Rgb bg_color{0, 0, 0};
  /// Per-pixel colour jitter of +-texture_amplitude drawn from a seeded
  /// mt19937; 0 keeps both layers constant.
  int texture_amplitude = 0;
  std::uint32_t seed = 0;

  friend bool operator==(const SynthSpec&, const SynthSpec&) = default;
};

/// Throws if a field is out of range or the feathered shape leaves the frame.
void validate(const SynthSpec& spec);

std::string to_json(const SynthSpec& spec);
SynthSpec synth_spec_from_json(const std::string& text);

struct SynthClip {
  FrameSequence frames;
  MatteSequence alpha;
  FrameSequence foreground;
  FrameSequence background;
};

/// Analytic alpha at pixel (x, y) of frame t.
double synth_alpha(const SynthSpec& spec, int t, int x, int y);

SynthClip synthesize_clip(const SynthSpec& spec);

/// Writes frames, alpha and the alpha binarized at 0.5 as masks into
/// `<root>/<clip_id>/{frames,masks,alpha}`.
ClipRecord write_synth_clip(const SynthSpec& spec, const std::string& clip_id,
                            const std::filesystem::path& root);

/// Six small clips (at most 64x64x12) covering hard and feathered disks and
/// rectangles, one of them textured.
std::vector<std::pair<std::string, SynthSpec>> default_corpus();

/// Writes a corpus and its manifest.json under `root`.
Manifest write_corpus(const std::vector<std::pair<std::string, SynthSpec>>& corpus,
                      const std::filesystem::path& root);

}  // namespace mattekit
