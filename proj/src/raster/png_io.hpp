// Copyright 2026 The mapsynth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "raster/image.hpp"

namespace mapsynth {

/// Decodes any PNG into 8-bit RGBA. Throws Error(Format) on non-PNG input.
TileImage decode_png(std::string_view bytes);
std::string encode_png(const TileImage& img);

TileImage read_png(const std::filesystem::path& path);
/// Atomic write (temp file + rename).
void write_png(const std::filesystem::path& path, const TileImage& img);

}  // namespace mapsynth
