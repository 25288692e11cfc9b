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

#include "mattekit/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <json.hpp>

#include "mattekit/compositing.hpp"

namespace mattekit {
namespace {

using nlohmann::json;

Vec2 center_at(const SynthSpec& spec, int t) {
  return {spec.center_start.x + t * spec.center_velocity.x,
          spec.center_start.y + t * spec.center_velocity.y};
}

// Linear ramp that is 1 inside `extent - feather/2`, 0 beyond
// `extent + feather/2`. Zero feather is a hard indicator, closed at the edge.
double ramp(double extent, double feather, double distance) {
  if (feather == 0.0) return distance <= extent ? 1.0 : 0.0;
  return std::clamp((extent + feather / 2.0 - distance) / feather, 0.0, 1.0);
}

json rgb_json(const Rgb& c) { return json::array({c[0], c[1], c[2]}); }
json vec_json(const Vec2& v) { return json::array({v.x, v.y}); }

Rgb rgb_from(const json& j) {
  if (!j.is_array() || j.size() != 3) throw Error("colour must be an [r, g, b] array");
  Rgb c{};
  for (int i = 0; i < 3; ++i) {
    const int v = j[i].get<int>();
    if (v < 0 || v > 255) throw Error("colour channel outside [0, 255]");
    c[i] = static_cast<std::uint8_t>(v);
  }
  return c;
}

Vec2 vec_from(const json& j) {
  if (!j.is_array() || j.size() != 2) throw Error("vector must be an [x, y] array");
  return {j[0].get<double>(), j[1].get<double>()};
}

RgbPlane textured_layer(const SynthSpec& spec, Rgb base, std::mt19937& rng) {
  RgbPlane layer(spec.height, spec.width, base);
  if (spec.texture_amplitude == 0) return layer;
  const auto span = static_cast<std::uint32_t>(2 * spec.texture_amplitude + 1);
  for (auto& px : layer.pixels()) {
    for (int c = 0; c < 3; ++c) {
      const int jitter = static_cast<int>(rng() % span) - spec.texture_amplitude;
      px[c] = static_cast<std::uint8_t>(std::clamp(int(px[c]) + jitter, 0, 255));
    }
  }
  return layer;
}

}  // namespace

void validate(const SynthSpec& spec) {
  if (spec.width < 1 || spec.height < 1) throw Error("synth: width and height must be positive");
  if (spec.frame_count < 1) throw Error("synth: frame_count must be positive");
  if (!(spec.feather_width >= 0.0)) throw Error("synth: feather_width must be >= 0");
  if (spec.texture_amplitude < 0 || spec.texture_amplitude > 127)
    throw Error("synth: texture_amplitude must lie in [0, 127]");
  Vec2 extent;
  if (spec.shape == SynthShape::FeatheredDisk) {
    if (!(spec.radius > 0.0)) throw Error("synth: radius must be positive");
    extent = {spec.radius, spec.radius};
  } else {
    if (!(spec.half_extents.x > 0.0 && spec.half_extents.y > 0.0))
      throw Error("synth: half_extents must be positive");
    extent = spec.half_extents;
  }
  const double margin = spec.feather_width / 2.0;
  for (int t = 0; t < spec.frame_count; ++t) {
    const Vec2 c = center_at(spec, t);
    if (c.x - extent.x - margin < 0.0 || c.x + extent.x + margin > spec.width - 1.0 ||
        c.y - extent.y - margin < 0.0 || c.y + extent.y + margin > spec.height - 1.0)
      throw Error("synth: shape exits frame bounds at frame " + std::to_string(t));
  }
}

double synth_alpha(const SynthSpec& spec, int t, int x, int y) {
  const Vec2 c = center_at(spec, t);
  const double dx = x - c.x;
  const double dy = y - c.y;
  if (spec.shape == SynthShape::FeatheredDisk)
    return ramp(spec.radius, spec.feather_width, std::sqrt(dx * dx + dy * dy));
  return std::min(ramp(spec.half_extents.x, spec.feather_width, std::abs(dx)),
                  ramp(spec.half_extents.y, spec.feather_width, std::abs(dy)));
}

SynthClip synthesize_clip(const SynthSpec& spec) {
  validate(spec);
  std::mt19937 rng(spec.seed);
  std::vector<AlphaPlane> alpha;
  std::vector<RgbPlane> fg;
  std::vector<RgbPlane> bg;
  for (int t = 0; t < spec.frame_count; ++t) {
    AlphaPlane a(spec.height, spec.width);
    for (int y = 0; y < spec.height; ++y)
      for (int x = 0; x < spec.width; ++x) a(y, x) = synth_alpha(spec, t, x, y);
    alpha.push_back(std::move(a));
    fg.push_back(textured_layer(spec, spec.fg_color, rng));
    bg.push_back(textured_layer(spec, spec.bg_color, rng));
  }
  CompositeInputs inputs{FrameSequence(std::move(fg)), FrameSequence(std::move(bg)),
                         MatteSequence(std::move(alpha))};
  FrameSequence frames = composite(inputs);
  return {std::move(frames), std::move(inputs.alpha), std::move(inputs.foreground),
          std::move(inputs.background)};
}

std::string to_json(const SynthSpec& spec) {
  json j = {{"width", spec.width},
            {"height", spec.height},
            {"frame_count", spec.frame_count},
            {"shape", spec.shape == SynthShape::FeatheredDisk ? "feathered_disk" : "feathered_rect"},
            {"center_start", vec_json(spec.center_start)},
            {"center_velocity", vec_json(spec.center_velocity)},
            {"radius", spec.radius},
            {"half_extents", vec_json(spec.half_extents)},
            {"feather_width", spec.feather_width},
            {"fg_color", rgb_json(spec.fg_color)},
            {"bg_color", rgb_json(spec.bg_color)},
            {"texture_amplitude", spec.texture_amplitude},
            {"seed", spec.seed}};
  return j.dump(2) + "\n";
}

SynthSpec synth_spec_from_json(const std::string& text) {
  SynthSpec spec;
  try {
    const json j = json::parse(text);
    if (!j.is_object()) throw Error("synth spec must be a JSON object");
    for (const auto& [key, value] : j.items()) {
      if (key == "width") spec.width = value.get<int>();
      else if (key == "height") spec.height = value.get<int>();
      else if (key == "frame_count") spec.frame_count = value.get<int>();
      else if (key == "shape") {
        const auto name = value.get<std::string>();
        if (name == "feathered_disk") spec.shape = SynthShape::FeatheredDisk;
        else if (name == "feathered_rect") spec.shape = SynthShape::FeatheredRect;
        else throw Error("unknown synth shape '" + name + "'");
      } else if (key == "center_start") spec.center_start = vec_from(value);
      else if (key == "center_velocity") spec.center_velocity = vec_from(value);
      else if (key == "radius") spec.radius = value.get<double>();
      else if (key == "half_extents") spec.half_extents = vec_from(value);
      else if (key == "feather_width") spec.feather_width = value.get<double>();
      else if (key == "fg_color") spec.fg_color = rgb_from(value);
      else if (key == "bg_color") spec.bg_color = rgb_from(value);
      else if (key == "texture_amplitude") spec.texture_amplitude = value.get<int>();
      else if (key == "seed") spec.seed = value.get<std::uint32_t>();
      else throw Error("unknown synth spec field '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw Error(std::string("malformed synth spec: ") + e.what());
  }
  validate(spec);
  return spec;
}

ClipRecord write_synth_clip(const SynthSpec& spec, const std::string& clip_id,
                            const std::filesystem::path& root) {
  const SynthClip clip = synthesize_clip(spec);
  ClipRecord record = ClipRecord::standard(clip_id, clip.alpha.size());
  save_frame_sequence(clip.frames, root / record.frames_dir);
  save_matte_sequence(clip.alpha, root / record.alpha_dir);
  // Masks come from the stored (quantized) alpha so they agree with what a
  // reader of the alpha directory would derive.
  save_mask_sequence(binarize_matte(quantize_matte(clip.alpha), kDefaultBinarizeThreshold),
                     root / record.masks_dir);
  return record;
}

std::vector<std::pair<std::string, SynthSpec>> default_corpus() {
  std::vector<std::pair<std::string, SynthSpec>> corpus;
  auto add = [&](std::string id, SynthSpec s) { corpus.emplace_back(std::move(id), s); };

  SynthSpec s;
  s.shape = SynthShape::FeatheredDisk;
  s.radius = 16.0;
  s.feather_width = 0.0;
  s.center_start = {24.0, 28.0};
  s.center_velocity = {1.0, 0.5};
  s.fg_color = {220, 60, 40};
  s.bg_color = {30, 90, 200};
  s.seed = 1;
  add("disk_hard", s);

  s = SynthSpec{};
  s.radius = 14.0;
  s.feather_width = 4.0;
  s.center_start = {22.0, 30.0};
  s.center_velocity = {1.5, 0.5};
  s.fg_color = {240, 240, 240};
  s.bg_color = {20, 20, 20};
  s.seed = 2;
  add("disk_soft", s);

  s = SynthSpec{};
  s.height = 48;
  s.radius = 12.0;
  s.feather_width = 8.0;
  s.center_start = {20.0, 23.0};
  s.center_velocity = {2.0, 0.0};
  s.fg_color = {40, 200, 80};
  s.bg_color = {200, 40, 160};
  s.seed = 3;
  add("disk_wide", s);

  s = SynthSpec{};
  s.shape = SynthShape::FeatheredRect;
  s.half_extents = {14.0, 10.0};
  s.center_start = {24.0, 30.0};
  s.center_velocity = {1.0, 1.0};
  s.fg_color = {250, 210, 30};
  s.bg_color = {10, 40, 90};
  s.seed = 4;
  add("rect_hard", s);

  s = SynthSpec{};
  s.shape = SynthShape::FeatheredRect;
  s.width = 48;
  s.half_extents = {10.0, 16.0};
  s.feather_width = 3.0;
  s.center_start = {24.0, 24.0};
  s.center_velocity = {0.5, 1.0};
  s.fg_color = {180, 120, 250};
  s.bg_color = {60, 160, 20};
  s.seed = 5;
  add("rect_soft", s);

  s = SynthSpec{};
  s.radius = 18.0;
  s.feather_width = 2.0;
  s.center_start = {30.0, 30.0};
  s.center_velocity = {0.5, -0.5};
  s.fg_color = {230, 200, 50};
  s.bg_color = {20, 60, 180};
  s.texture_amplitude = 12;
  s.seed = 6;
  add("disk_textured", s);

  return corpus;
}

Manifest write_corpus(const std::vector<std::pair<std::string, SynthSpec>>& corpus,
                      const std::filesystem::path& root) {
  Manifest manifest;
  for (const auto& [id, spec] : corpus) manifest.push_back(write_synth_clip(spec, id, root));
  save_manifest(manifest, root);
  return load_manifest(root);
}

}  // namespace mattekit
