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
#include <vector>

#include "mattekit/image.hpp"

namespace mattekit {

inline constexpr double kDefaultBinarizeThreshold = 0.5;

enum class TrimapLabel : std::uint8_t {
  Background = 0,
  Unknown = 128,
  Foreground = 255,
};

/// Per-pixel three-way labelling. The byte values double as the on-disk
/// PNG encoding.
using Trimap = Plane<TrimapLabel>;

/// One clip of a dataset in the `<root>/<clip_id>/{frames,masks,alpha}` layout.
/// Directory paths are relative to the dataset root.
struct ClipRecord {
  std::string clip_id;
  std::string frames_dir;
  std::string masks_dir;
  std::string alpha_dir;
  std::size_t frame_count = 0;

  friend bool operator==(const ClipRecord&, const ClipRecord&) = default;

  /// Record with the canonical relative directories for `clip_id`.
  static ClipRecord standard(std::string clip_id, std::size_t frame_count);
};

using Manifest = std::vector<ClipRecord>;

// Frame sequence files are `%05d.png`, indexed from 00000 with no gaps.
std::string frame_file_name(std::size_t index);

/// Lists the frame files of `dir` in index order. Files whose names do not
/// match the numbering pattern are ignored; a missing index is an error.
std::vector<std::filesystem::path> list_frame_files(const std::filesystem::path& dir);

MatteSequence load_matte_sequence(const std::filesystem::path& dir);
/// Mask files hold bytes {0, 255}; anything else is rejected.
MaskSequence load_mask_sequence(const std::filesystem::path& dir);
FrameSequence load_frame_sequence(const std::filesystem::path& dir);

void save_matte_sequence(const MatteSequence& m, const std::filesystem::path& dir);
void save_mask_sequence(const MaskSequence& m, const std::filesystem::path& dir);
void save_frame_sequence(const FrameSequence& m, const std::filesystem::path& dir);

void save_trimap(const Trimap& trimap, const std::filesystem::path& file);

/// 1 where alpha >= threshold. Threshold must lie in the open interval (0, 1).
MaskSequence binarize_matte(const MatteSequence& m, double threshold = kDefaultBinarizeThreshold);
BinaryPlane binarize_plane(const AlphaPlane& alpha, double threshold);

/// Embeds a binary mask as a {0, 1}-valued matte.
MatteSequence mask_as_matte(const MaskSequence& m);

/// Applies the 8-bit storage quantization to every value, i.e. the result
/// of a save/load round trip.
MatteSequence quantize_matte(const MatteSequence& m);

std::string manifest_to_json(const Manifest& manifest);
Manifest manifest_from_json(const std::string& text);

/// Reads `<root>/manifest.json` and validates every record against the
/// directories it references.
Manifest load_manifest(const std::filesystem::path& root);
void save_manifest(const Manifest& manifest, const std::filesystem::path& root);

/// Throws unless every directory of `record` under `root` holds exactly
/// frame_count numbered frames.
void validate_clip_record(const std::filesystem::path& root, const ClipRecord& record);

}  // namespace mattekit
