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

#include <array>
#include <cstdint>
#include <span>

#include "placement/placement.hpp"
#include "raster/glyphs.hpp"
#include "raster/image.hpp"

namespace mapsynth {

struct RenderStats {
  int missing_glyphs = 0;  // rendered as tofu boxes
};

/// Paints every label in its own index colour with hard 0/255 alpha; the rest
/// of the canvas stays fully transparent. Throws Error(Argument) for a
/// zero-size canvas, a colour index of 0 or duplicate indices.
TileImage render_colored_layer(std::span<const PlacedLabel> labels, int width, int height,
                               const GlyphProvider& glyphs, const ColorIndexMap& colors = ColorIndexMap{},
                               RenderStats* stats = nullptr);

/// Replaces every opaque pixel by `ink`, preserving alpha. With `antialias`
/// the alpha channel is softened by a 3x3 box filter, which widens the opaque
/// mask by one pixel.
TileImage render_gray_layer(const TileImage& colored, Rgb ink = {0, 0, 0}, bool antialias = false);

/// Source-over compositing of `text` onto `background` (equal sizes).
TileImage composite(const TileImage& background, const TileImage& text);

/// Adds i.i.d. N(0, sigma^2) noise to the RGB channels of masked pixels,
/// clamped to [0, 255]. Deterministic per seed.
TileImage add_wornout_noise(const TileImage& image, const Mask& text_mask, double sigma, std::uint64_t seed);

/// Row-major 2x2 mosaic: tiles = {top-left, top-right, bottom-left,
/// bottom-right}, each 256x256. When all tiles carry addresses they must be
/// (z,x,y), (z,x+1,y), (z,x,y+1), (z,x+1,y+1).
TileImage concat_tiles(const std::array<TileImage, 4>& tiles);

}  // namespace mapsynth
