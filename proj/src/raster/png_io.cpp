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

#include "raster/png_io.hpp"

#include <png.h>

#include <cstring>

#include "common/error.hpp"
#include "common/fs_util.hpp"

namespace mapsynth {

TileImage decode_png(std::string_view bytes) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size()))
    throw Error(ErrorCode::Format, std::string("not a PNG image: ") + image.message);
  image.format = PNG_FORMAT_RGBA;
  TileImage out(static_cast<int>(image.width), static_cast<int>(image.height));
  if (!png_image_finish_read(&image, nullptr, out.samples().data(), 0, nullptr)) {
    png_image_free(&image);
    throw Error(ErrorCode::Format, std::string("corrupt PNG: ") + image.message);
  }
  return out;
}

std::string encode_png(const TileImage& img) {
  if (img.empty()) throw Error(ErrorCode::Argument, "cannot encode an empty image");
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(img.width());
  image.height = static_cast<png_uint_32>(img.height());
  image.format = PNG_FORMAT_RGBA;
  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&image, nullptr, &size, 0, img.samples().data(), 0, nullptr))
    throw Error(ErrorCode::Internal, std::string("PNG sizing failed: ") + image.message);
  std::string out(size, '\0');
  if (!png_image_write_to_memory(&image, out.data(), &size, 0, img.samples().data(), 0, nullptr))
    throw Error(ErrorCode::Internal, std::string("PNG encoding failed: ") + image.message);
  out.resize(size);
  return out;
}

TileImage read_png(const std::filesystem::path& path) {
  try {
    return decode_png(read_file(path));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Format) throw Error(ErrorCode::Format, path.string() + ": " + e.what());
    throw;
  }
}

void write_png(const std::filesystem::path& path, const TileImage& img) {
  write_file_atomic(path, encode_png(img));
}

}  // namespace mapsynth
