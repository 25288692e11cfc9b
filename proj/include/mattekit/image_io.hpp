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

#include <filesystem>

#include "mattekit/image.hpp"

namespace mattekit {

// 8-bit PNG codec. Writers use fixed zlib settings and emit no time or text
// chunks, so identical rasters always produce identical files.

GrayPlane read_gray_png(const std::filesystem::path& path);
RgbPlane read_rgb_png(const std::filesystem::path& path);

void write_gray_png(const std::filesystem::path& path, const GrayPlane& image);
void write_rgb_png(const std::filesystem::path& path, const RgbPlane& image);

}  // namespace mattekit
