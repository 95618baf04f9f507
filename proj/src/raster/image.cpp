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

#include "raster/image.hpp"

#include "common/error.hpp"

namespace mapsynth {

TileImage::TileImage(int width, int height, Rgba fill) : width_(width), height_(height) {
  if (width < 0 || height < 0) throw Error(ErrorCode::Argument, "negative image dimensions");
  samples_.resize(static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * 4);
  for (std::size_t i = 0; i < samples_.size(); i += 4) {
    samples_[i] = fill.r;
    samples_[i + 1] = fill.g;
    samples_[i + 2] = fill.b;
    samples_[i + 3] = fill.a;
  }
}

Mask opaque_mask(const TileImage& img) {
  Mask m(img.width(), img.height());
  const auto s = img.samples();
  for (std::size_t i = 0; i < m.bits.size(); ++i) m.bits[i] = s[i * 4 + 3] > 0 ? 1 : 0;
  return m;
}

namespace {
constexpr std::uint32_t code_of(Rgb c) {
  return (std::uint32_t{c.r} << 16) | (std::uint32_t{c.g} << 8) | c.b;
}
}  // namespace

ColorIndexMap::ColorIndexMap(Rgb ink) : ink_code_(code_of(ink)) {}

std::uint32_t ColorIndexMap::max_index() const noexcept {
  return ink_code_ == 0 ? 0xFFFFFFu : 0xFFFFFEu;
}

Rgb ColorIndexMap::color(std::uint32_t index) const {
  if (index == 0 || index > max_index()) throw Error(ErrorCode::Argument, "colour index out of range");
  std::uint32_t code = index;
  if (ink_code_ != 0 && code >= ink_code_) ++code;
  return {static_cast<std::uint8_t>(code >> 16), static_cast<std::uint8_t>((code >> 8) & 255),
          static_cast<std::uint8_t>(code & 255)};
}

std::optional<std::uint32_t> ColorIndexMap::index_of(Rgb c) const {
  const std::uint32_t code = code_of(c);
  if (code == 0 || code == ink_code_) return std::nullopt;
  if (ink_code_ != 0 && code > ink_code_) return code - 1;
  return code;
}

}  // namespace mapsynth
