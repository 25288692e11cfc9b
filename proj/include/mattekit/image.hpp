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

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mattekit {

/// Base exception for every contract violation reported by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Rgb = std::array<std::uint8_t, 3>;

/// Dense row-major 2D raster. Value type; copying copies the pixels.
template <typename T>
class Plane {
 public:
  using value_type = T;

  Plane() = default;
  Plane(int height, int width, T fill = T{})
      : height_(height), width_(width) {
    if (height < 0 || width < 0) throw Error("negative raster dimensions");
    data_.assign(static_cast<std::size_t>(height) * static_cast<std::size_t>(width), fill);
  }

  int height() const { return height_; }
  int width() const { return width_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  T& operator()(int y, int x) { return data_[index(y, x)]; }
  const T& operator()(int y, int x) const { return data_[index(y, x)]; }

  bool contains(int y, int x) const { return y >= 0 && x >= 0 && y < height_ && x < width_; }

  std::span<T> pixels() { return data_; }
  std::span<const T> pixels() const { return data_; }

  bool same_shape(const auto& other) const {
    return height_ == other.height() && width_ == other.width();
  }

  friend bool operator==(const Plane&, const Plane&) = default;

 private:
  std::size_t index(int y, int x) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int height_ = 0;
  int width_ = 0;
  std::vector<T> data_;
};

using AlphaPlane = Plane<double>;
/// Binary raster with values in {0, 1}.
using BinaryPlane = Plane<std::uint8_t>;
using GrayPlane = Plane<std::uint8_t>;
using RgbPlane = Plane<Rgb>;

template <typename T>
std::string shape_string(const Plane<T>& p) {
  return std::to_string(p.height()) + "x" + std::to_string(p.width());
}

/// Ordered frames of identical resolution, T >= 1.
///
/// Construction validates the shape invariants and the per-pixel value
/// domain of the pixel type (see check_pixel_domain), so a Sequence that
/// exists is always valid.
template <typename T>
class Sequence {
 public:
  using plane_type = Plane<T>;

  explicit Sequence(std::vector<Plane<T>> frames) : frames_(std::move(frames)) {
    if (frames_.empty()) throw Error("T ≥ 1 violated: sequence has no frames");
    for (std::size_t t = 0; t < frames_.size(); ++t) {
      if (!frames_[t].same_shape(frames_.front()))
        throw Error("frame " + std::to_string(t) + " has resolution " +
                    shape_string(frames_[t]) + ", expected " + shape_string(frames_.front()));
      if (frames_[t].empty()) throw Error("frame " + std::to_string(t) + " is empty");
      check_pixel_domain(frames_[t], t);
    }
  }

  std::size_t size() const { return frames_.size(); }
  int height() const { return frames_.front().height(); }
  int width() const { return frames_.front().width(); }
  std::size_t pixel_count() const { return size() * frames_.front().size(); }

  const Plane<T>& operator[](std::size_t t) const { return frames_[t]; }
  const std::vector<Plane<T>>& frames() const { return frames_; }
  auto begin() const { return frames_.begin(); }
  auto end() const { return frames_.end(); }

  bool same_shape(const auto& other) const {
    return size() == other.size() && height() == other.height() && width() == other.width();
  }

  friend bool operator==(const Sequence&, const Sequence&) = default;

 private:
  static void check_pixel_domain(const Plane<T>& frame, std::size_t t);

  std::vector<Plane<T>> frames_;
};

/// Alpha values in [0, 1].
using MatteSequence = Sequence<double>;
/// Binary values in {0, 1}.
using MaskSequence = Sequence<std::uint8_t>;
/// 8-bit RGB frames.
using FrameSequence = Sequence<Rgb>;

template <>
void Sequence<double>::check_pixel_domain(const Plane<double>& frame, std::size_t t);
template <>
void Sequence<std::uint8_t>::check_pixel_domain(const Plane<std::uint8_t>& frame, std::size_t t);
template <>
inline void Sequence<Rgb>::check_pixel_domain(const Plane<Rgb>&, std::size_t) {}

/// Throws unless both sequences agree on T, H and W.
template <typename A, typename B>
void require_same_shape(const A& a, const B& b, const char* what) {
  if (!a.same_shape(b))
    throw Error(std::string(what) + ": shape mismatch (" + std::to_string(a.size()) + "x" +
                shape_string(a[0]) + " vs " + std::to_string(b.size()) + "x" +
                shape_string(b[0]) + ")");
}

/// 8-bit quantization with round-half-away-from-zero, clamped to [0, 255].
std::uint8_t quantize_unit(double v);

}  // namespace mattekit
