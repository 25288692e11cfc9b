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

#include "mattekit/core_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "mattekit/image_io.hpp"

namespace fs = std::filesystem;

namespace mattekit {

template <>
void Sequence<double>::check_pixel_domain(const Plane<double>& frame, std::size_t t) {
  for (double v : frame.pixels()) {
    if (!(v >= 0.0 && v <= 1.0))
      throw Error("frame " + std::to_string(t) + ": alpha value " + std::to_string(v) +
                  " outside [0, 1]");
  }
}

template <>
void Sequence<std::uint8_t>::check_pixel_domain(const Plane<std::uint8_t>& frame, std::size_t t) {
  for (std::uint8_t v : frame.pixels()) {
    if (v > 1)
      throw Error("frame " + std::to_string(t) + ": mask value " + std::to_string(v) +
                  " is not binary");
  }
}

std::uint8_t quantize_unit(double v) {
  const double scaled = std::clamp(v, 0.0, 1.0) * 255.0;
  return static_cast<std::uint8_t>(std::lround(scaled));
}

ClipRecord ClipRecord::standard(std::string clip_id, std::size_t frame_count) {
  ClipRecord r;
  r.frames_dir = clip_id + "/frames";
  r.masks_dir = clip_id + "/masks";
  r.alpha_dir = clip_id + "/alpha";
  r.clip_id = std::move(clip_id);
  r.frame_count = frame_count;
  return r;
}

std::string frame_file_name(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%05zu.png", index);
  return buf;
}

namespace {

bool parse_frame_index(const std::string& name, std::size_t& index) {
  if (name.size() < 9 || !name.ends_with(".png")) return false;
  const std::string stem = name.substr(0, name.size() - 4);
  if (!std::all_of(stem.begin(), stem.end(), [](char c) { return c >= '0' && c <= '9'; }))
    return false;
  index = std::stoull(stem);
  return frame_file_name(index) == name;
}

template <typename Plane, typename ReadFn>
std::vector<Plane> read_frames(const fs::path& dir, ReadFn read) {
  std::vector<Plane> frames;
  const auto files = list_frame_files(dir);
  frames.reserve(files.size());
  for (const auto& file : files) {
    Plane p = read(file);
    if (!frames.empty() && !p.same_shape(frames.front()))
      throw Error("mixed resolutions: " + file.string() + " is " + shape_string(p) +
                  ", expected " + shape_string(frames.front()));
    frames.push_back(std::move(p));
  }
  return frames;
}

// Removes numbered frames left over from a previous, longer sequence.
void prepare_output_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create directory " + dir.string() + ": " + ec.message());
  for (const auto& entry : fs::directory_iterator(dir)) {
    std::size_t index = 0;
    if (entry.is_regular_file() && parse_frame_index(entry.path().filename().string(), index))
      fs::remove(entry.path());
  }
}

}  // namespace

std::vector<fs::path> list_frame_files(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw Error("not a directory: " + dir.string());
  std::vector<std::size_t> indices;
  for (const auto& entry : fs::directory_iterator(dir)) {
    std::size_t index = 0;
    if (entry.is_regular_file() && parse_frame_index(entry.path().filename().string(), index))
      indices.push_back(index);
  }
  if (indices.empty()) throw Error("no frames in " + dir.string());
  std::sort(indices.begin(), indices.end());
  std::vector<fs::path> files;
  files.reserve(indices.size());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] != i)
      throw Error("gap at index " + std::to_string(i) + " in " + dir.string());
    files.push_back(dir / frame_file_name(i));
  }
  return files;
}

MatteSequence load_matte_sequence(const fs::path& dir) {
  auto frames = read_frames<AlphaPlane>(dir, [](const fs::path& file) {
    const GrayPlane gray = read_gray_png(file);
    AlphaPlane alpha(gray.height(), gray.width());
    std::transform(gray.pixels().begin(), gray.pixels().end(), alpha.pixels().begin(),
                   [](std::uint8_t b) { return b / 255.0; });
    return alpha;
  });
  return MatteSequence(std::move(frames));
}

MaskSequence load_mask_sequence(const fs::path& dir) {
  auto frames = read_frames<BinaryPlane>(dir, [](const fs::path& file) {
    GrayPlane gray = read_gray_png(file);
    for (auto& b : gray.pixels()) {
      if (b != 0 && b != 255)
        throw Error("mask byte " + std::to_string(b) + " is neither 0 nor 255: " + file.string());
      b = b == 255 ? 1 : 0;
    }
    return gray;
  });
  return MaskSequence(std::move(frames));
}

FrameSequence load_frame_sequence(const fs::path& dir) {
  return FrameSequence(read_frames<RgbPlane>(dir, [](const fs::path& f) { return read_rgb_png(f); }));
}

void save_matte_sequence(const MatteSequence& m, const fs::path& dir) {
  prepare_output_dir(dir);
  for (std::size_t t = 0; t < m.size(); ++t) {
    GrayPlane gray(m.height(), m.width());
    std::transform(m[t].pixels().begin(), m[t].pixels().end(), gray.pixels().begin(),
                   quantize_unit);
    write_gray_png(dir / frame_file_name(t), gray);
  }
}

void save_mask_sequence(const MaskSequence& m, const fs::path& dir) {
  prepare_output_dir(dir);
  for (std::size_t t = 0; t < m.size(); ++t) {
    GrayPlane gray(m.height(), m.width());
    std::transform(m[t].pixels().begin(), m[t].pixels().end(), gray.pixels().begin(),
                   [](std::uint8_t v) -> std::uint8_t { return v ? 255 : 0; });
    write_gray_png(dir / frame_file_name(t), gray);
  }
}

void save_frame_sequence(const FrameSequence& m, const fs::path& dir) {
  prepare_output_dir(dir);
  for (std::size_t t = 0; t < m.size(); ++t) write_rgb_png(dir / frame_file_name(t), m[t]);
}

void save_trimap(const Trimap& trimap, const fs::path& file) {
  GrayPlane gray(trimap.height(), trimap.width());
  std::transform(trimap.pixels().begin(), trimap.pixels().end(), gray.pixels().begin(),
                 [](TrimapLabel l) { return static_cast<std::uint8_t>(l); });
  write_gray_png(file, gray);
}

BinaryPlane binarize_plane(const AlphaPlane& alpha, double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0))
    throw Error("binarization threshold " + std::to_string(threshold) + " outside (0, 1)");
  BinaryPlane out(alpha.height(), alpha.width());
  std::transform(alpha.pixels().begin(), alpha.pixels().end(), out.pixels().begin(),
                 [threshold](double v) -> std::uint8_t { return v >= threshold ? 1 : 0; });
  return out;
}

MaskSequence binarize_matte(const MatteSequence& m, double threshold) {
  std::vector<BinaryPlane> frames;
  frames.reserve(m.size());
  for (const auto& f : m) frames.push_back(binarize_plane(f, threshold));
  return MaskSequence(std::move(frames));
}

MatteSequence mask_as_matte(const MaskSequence& m) {
  std::vector<AlphaPlane> frames;
  frames.reserve(m.size());
  for (const auto& f : m) {
    AlphaPlane a(f.height(), f.width());
    std::transform(f.pixels().begin(), f.pixels().end(), a.pixels().begin(),
                   [](std::uint8_t v) { return v ? 1.0 : 0.0; });
    frames.push_back(std::move(a));
  }
  return MatteSequence(std::move(frames));
}

MatteSequence quantize_matte(const MatteSequence& m) {
  std::vector<AlphaPlane> frames(m.frames());
  for (auto& f : frames)
    for (double& v : f.pixels()) v = quantize_unit(v) / 255.0;
  return MatteSequence(std::move(frames));
}

namespace {

const std::set<std::string> kRecordFields = {"alpha_dir", "clip_id", "frame_count", "frames_dir",
                                             "masks_dir"};

void check_sorted_unique(const Manifest& manifest) {
  for (std::size_t i = 1; i < manifest.size(); ++i) {
    if (!(manifest[i - 1].clip_id < manifest[i].clip_id))
      throw Error("manifest not sorted by unique clip_id at '" + manifest[i].clip_id + "'");
  }
}

}  // namespace

std::string manifest_to_json(const Manifest& manifest) {
  Manifest sorted = manifest;
  std::sort(sorted.begin(), sorted.end(),
            [](const ClipRecord& a, const ClipRecord& b) { return a.clip_id < b.clip_id; });
  check_sorted_unique(sorted);
  nlohmann::json doc = nlohmann::json::array();
  for (const auto& r : sorted) {
    doc.push_back({{"clip_id", r.clip_id},
                   {"frames_dir", r.frames_dir},
                   {"masks_dir", r.masks_dir},
                   {"alpha_dir", r.alpha_dir},
                   {"frame_count", r.frame_count}});
  }
  return doc.dump(2) + "\n";
}

Manifest manifest_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("manifest is not valid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw Error("manifest must be a JSON array");
  Manifest manifest;
  for (const auto& item : doc) {
    if (!item.is_object()) throw Error("manifest entry is not an object");
    std::set<std::string> keys;
    for (const auto& [key, _] : item.items()) keys.insert(key);
    if (keys != kRecordFields)
      throw Error("manifest entry must have exactly the fields clip_id, frames_dir, masks_dir, "
                  "alpha_dir, frame_count");
    try {
      ClipRecord r;
      r.clip_id = item.at("clip_id").get<std::string>();
      r.frames_dir = item.at("frames_dir").get<std::string>();
      r.masks_dir = item.at("masks_dir").get<std::string>();
      r.alpha_dir = item.at("alpha_dir").get<std::string>();
      const auto count = item.at("frame_count").get<std::int64_t>();
      if (count < 1) throw Error("clip '" + r.clip_id + "': frame_count must be positive");
      r.frame_count = static_cast<std::size_t>(count);
      manifest.push_back(std::move(r));
    } catch (const nlohmann::json::exception& e) {
      throw Error(std::string("malformed manifest entry: ") + e.what());
    }
  }
  check_sorted_unique(manifest);
  return manifest;
}

void validate_clip_record(const fs::path& root, const ClipRecord& record) {
  for (const std::string* rel : {&record.frames_dir, &record.masks_dir, &record.alpha_dir}) {
    const fs::path dir = root / *rel;
    if (!fs::is_directory(dir))
      throw Error("clip '" + record.clip_id + "': missing directory " + dir.string());
    const auto files = list_frame_files(dir);
    if (files.size() != record.frame_count)
      throw Error("clip '" + record.clip_id + "': " + dir.string() + " holds " +
                  std::to_string(files.size()) + " frames, manifest says " +
                  std::to_string(record.frame_count));
  }
}

Manifest load_manifest(const fs::path& root) {
  const fs::path file = root / "manifest.json";
  std::ifstream in(file);
  if (!in) throw Error("cannot read " + file.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  Manifest manifest = manifest_from_json(buffer.str());
  for (const auto& r : manifest) validate_clip_record(root, r);
  return manifest;
}

void save_manifest(const Manifest& manifest, const fs::path& root) {
  fs::create_directories(root);
  const fs::path file = root / "manifest.json";
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + file.string());
  out << manifest_to_json(manifest);
  if (!out) throw Error("write failed: " + file.string());
}

}  // namespace mattekit
