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

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "geo/projection.hpp"

namespace mapsynth {

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

struct Rgba {
  std::uint8_t r = 0, g = 0, b = 0, a = 0;
  friend bool operator==(const Rgba&, const Rgba&) = default;
  Rgb rgb() const { return {r, g, b}; }
};

/// Row-major 8-bit RGBA raster.
class TileImage {
 public:
  TileImage() = default;
  TileImage(int width, int height, Rgba fill = {});

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  bool empty() const noexcept { return width_ == 0 || height_ == 0; }

  Rgba at(int x, int y) const {
    const std::uint8_t* p = &samples_[offset(x, y)];
    return {p[0], p[1], p[2], p[3]};
  }
  void set(int x, int y, Rgba c) {
    std::uint8_t* p = &samples_[offset(x, y)];
    p[0] = c.r;
    p[1] = c.g;
    p[2] = c.b;
    p[3] = c.a;
  }
  bool contains(int x, int y) const { return x >= 0 && y >= 0 && x < width_ && y < height_; }

  std::span<std::uint8_t> samples() noexcept { return samples_; }
  std::span<const std::uint8_t> samples() const noexcept { return samples_; }

  std::optional<TileAddress> address;

  friend bool operator==(const TileImage& a, const TileImage& b) {
    return a.width_ == b.width_ && a.height_ == b.height_ && a.samples_ == b.samples_;
  }

 private:
  std::size_t offset(int x, int y) const {
    return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x)) * 4;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> samples_;
};

/// Binary mask with the same addressing as TileImage.
struct Mask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> bits;

  Mask() = default;
  Mask(int w, int h) : width(w), height(h), bits(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), 0) {}

  bool at(int x, int y) const { return bits[static_cast<std::size_t>(y) * width + x] != 0; }
  void set(int x, int y, bool v = true) { bits[static_cast<std::size_t>(y) * width + x] = v ? 1 : 0; }
  bool contains(int x, int y) const { return x >= 0 && y >= 0 && x < width && y < height; }
};

/// Opaque-pixel mask (alpha > 0).
Mask opaque_mask(const TileImage& img);

/// Bijection between label colour indices and RGB triples.
///
/// Index n maps to the 24-bit code n, written as (n>>16, n>>8&255, n&255);
/// the code equal to the ink colour is skipped so no label ever shares the
/// gray layer's ink. Index 0 is reserved for "no label".
class ColorIndexMap {
 public:
  explicit ColorIndexMap(Rgb ink = {0, 0, 0});

  Rgb color(std::uint32_t index) const;
  std::optional<std::uint32_t> index_of(Rgb c) const;
  std::uint32_t max_index() const noexcept;

 private:
  std::uint32_t ink_code_;
};

}  // namespace mapsynth
