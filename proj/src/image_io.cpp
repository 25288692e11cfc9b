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

#include "mattekit/image_io.hpp"

#include <png.h>

#include <cstdio>
#include <memory>

namespace mattekit {
namespace {

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::filesystem::path& path, const char* mode) {
  FilePtr f(std::fopen(path.c_str(), mode));
  if (!f) throw Error("cannot open " + path.string());
  return f;
}

[[noreturn]] void png_error_handler(png_structp png, png_const_charp msg) {
  auto* text = static_cast<std::string*>(png_get_error_ptr(png));
  if (text) *text = msg;
  png_longjmp(png, 1);
}

void png_warning_handler(png_structp, png_const_charp) {}

struct DecodedPng {
  int height = 0;
  int width = 0;
  int channels = 0;
  std::vector<std::uint8_t> bytes;
};

// Decodes without transforms other than unpacking, so the caller can reject
// anything that is not already the expected colour type.
DecodedPng decode(const std::filesystem::path& path, png_byte expected_color_type) {
  FilePtr file = open_file(path, "rb");
  std::uint8_t signature[8];
  if (std::fread(signature, 1, 8, file.get()) != 8 || png_sig_cmp(signature, 0, 8) != 0)
    throw Error("not a PNG file: " + path.string());

  std::string message;
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &message, png_error_handler,
                                           png_warning_handler);
  if (!png) throw Error("libpng init failed for " + path.string());
  png_infop info = png_create_info_struct(png);
  DecodedPng out;
  std::vector<png_bytep> rows;

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw Error("PNG decode error in " + path.string() + ": " + message);
  }
  png_init_io(png, file.get());
  png_set_sig_bytes(png, 8);
  png_read_info(png, info);

  const png_byte color_type = png_get_color_type(png, info);
  const png_byte bit_depth = png_get_bit_depth(png, info);
  if (color_type != expected_color_type || bit_depth != 8) {
    png_destroy_read_struct(&png, &info, nullptr);
    const char* want = expected_color_type == PNG_COLOR_TYPE_GRAY ? "8-bit grayscale" : "8-bit RGB";
    throw Error("expected " + std::string(want) + " image: " + path.string());
  }
  if (png_get_interlace_type(png, info) != PNG_INTERLACE_NONE) png_set_interlace_handling(png);
  png_read_update_info(png, info);

  out.width = static_cast<int>(png_get_image_width(png, info));
  out.height = static_cast<int>(png_get_image_height(png, info));
  out.channels = png_get_channels(png, info);
  const std::size_t stride = png_get_rowbytes(png, info);
  out.bytes.resize(stride * static_cast<std::size_t>(out.height));
  rows.resize(static_cast<std::size_t>(out.height));
  for (int y = 0; y < out.height; ++y) rows[y] = out.bytes.data() + stride * y;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return out;
}

void encode(const std::filesystem::path& path, int height, int width, png_byte color_type,
            const std::uint8_t* bytes, std::size_t stride) {
  FilePtr file = open_file(path, "wb");
  std::string message;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &message, png_error_handler,
                                            png_warning_handler);
  if (!png) throw Error("libpng init failed for " + path.string());
  png_infop info = png_create_info_struct(png);
  std::vector<png_bytep> rows(static_cast<std::size_t>(height));

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw Error("PNG encode error in " + path.string() + ": " + message);
  }
  png_init_io(png, file.get());
  png_set_compression_level(png, 6);
  png_set_filter(png, PNG_FILTER_TYPE_BASE, PNG_FILTER_NONE);
  png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height), 8,
               color_type, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int y = 0; y < height; ++y)
    rows[y] = const_cast<png_bytep>(bytes + stride * static_cast<std::size_t>(y));
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  if (std::fflush(file.get()) != 0) throw Error("write failed: " + path.string());
}

}  // namespace

GrayPlane read_gray_png(const std::filesystem::path& path) {
  DecodedPng png = decode(path, PNG_COLOR_TYPE_GRAY);
  GrayPlane out(png.height, png.width);
  std::copy(png.bytes.begin(), png.bytes.end(), out.pixels().begin());
  return out;
}

RgbPlane read_rgb_png(const std::filesystem::path& path) {
  DecodedPng png = decode(path, PNG_COLOR_TYPE_RGB);
  RgbPlane out(png.height, png.width);
  auto px = out.pixels();
  for (std::size_t i = 0; i < px.size(); ++i)
    px[i] = {png.bytes[3 * i], png.bytes[3 * i + 1], png.bytes[3 * i + 2]};
  return out;
}

void write_gray_png(const std::filesystem::path& path, const GrayPlane& image) {
  encode(path, image.height(), image.width(), PNG_COLOR_TYPE_GRAY, image.pixels().data(),
         static_cast<std::size_t>(image.width()));
}

void write_rgb_png(const std::filesystem::path& path, const RgbPlane& image) {
  static_assert(sizeof(Rgb) == 3);
  encode(path, image.height(), image.width(), PNG_COLOR_TYPE_RGB,
         reinterpret_cast<const std::uint8_t*>(image.pixels().data()),
         static_cast<std::size_t>(image.width()) * 3);
}

}  // namespace mattekit
