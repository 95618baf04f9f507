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

#include "raster/render.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <tuple>

#include "common/error.hpp"

namespace mapsynth {

namespace {

using GlyphKey = std::tuple<char32_t, int, double>;

void paint_glyph(TileImage& out, const GlyphBitmap& bmp, const GlyphPose& pose, Rgba color) {
  if (bmp.empty()) return;
  const double c = std::cos(pose.rotation_rad), s = std::sin(pose.rotation_rad);
  // Canvas-space bounding box of the rotated bitmap.
  const double lx[2] = {static_cast<double>(bmp.left), static_cast<double>(bmp.left + bmp.width)};
  const double ly[2] = {static_cast<double>(bmp.top), static_cast<double>(bmp.top + bmp.height)};
  double min_x = 1e300, min_y = 1e300, max_x = -1e300, max_y = -1e300;
  for (double x : lx)
    for (double y : ly) {
      const double px = pose.anchor.x + x * c - y * s;
      const double py = pose.anchor.y + x * s + y * c;
      min_x = std::min(min_x, px);
      max_x = std::max(max_x, px);
      min_y = std::min(min_y, py);
      max_y = std::max(max_y, py);
    }
  const int x0 = std::max(0, static_cast<int>(std::floor(min_x)));
  const int y0 = std::max(0, static_cast<int>(std::floor(min_y)));
  const int x1 = std::min(out.width() - 1, static_cast<int>(std::ceil(max_x)));
  const int y1 = std::min(out.height() - 1, static_cast<int>(std::ceil(max_y)));
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      // Inverse-map the pixel centre into glyph space (nearest sample).
      const double dx = x + 0.5 - pose.anchor.x;
      const double dy = y + 0.5 - pose.anchor.y;
      const double gx = dx * c + dy * s;
      const double gy = -dx * s + dy * c;
      const int i = static_cast<int>(std::floor(gx)) - bmp.left;
      const int j = static_cast<int>(std::floor(gy)) - bmp.top;
      if (i < 0 || j < 0 || i >= bmp.width || j >= bmp.height) continue;
      if (bmp.at(i, j)) out.set(x, y, color);
    }
  }
}

}  // namespace

TileImage render_colored_layer(std::span<const PlacedLabel> labels, int width, int height, const GlyphProvider& glyphs,
                               const ColorIndexMap& colors, RenderStats* stats) {
  if (width <= 0 || height <= 0) throw Error(ErrorCode::Argument, "zero-size canvas");
  std::set<std::uint32_t> seen;
  for (const PlacedLabel& l : labels) {
    if (l.color_index == 0) throw Error(ErrorCode::Argument, "label colour index 0 is reserved");
    if (!seen.insert(l.color_index).second)
      throw Error(ErrorCode::Argument, "duplicate label colour index " + std::to_string(l.color_index));
  }

  TileImage out(width, height);
  std::map<GlyphKey, GlyphBitmap> cache;
  for (const PlacedLabel& l : labels) {
    const Rgb rgb = colors.color(l.color_index);
    const Rgba color{rgb.r, rgb.g, rgb.b, 255};
    for (const GlyphPose& pose : l.poses) {
      if (!glyphs.has_glyph(pose.ch, l.font.font_id) && stats) ++stats->missing_glyphs;
      const GlyphKey key{pose.ch, l.font.font_id, l.size_px};
      auto it = cache.find(key);
      if (it == cache.end()) it = cache.emplace(key, glyphs.rasterize(pose.ch, l.font.font_id, l.size_px)).first;
      paint_glyph(out, it->second, pose, color);
    }
  }
  return out;
}

TileImage render_gray_layer(const TileImage& colored, Rgb ink, bool antialias) {
  TileImage out(colored.width(), colored.height());
  for (int y = 0; y < colored.height(); ++y)
    for (int x = 0; x < colored.width(); ++x) {
      const std::uint8_t a = colored.at(x, y).a;
      if (a > 0) out.set(x, y, {ink.r, ink.g, ink.b, a});
    }
  if (!antialias) return out;

  TileImage soft = out;
  for (int y = 0; y < out.height(); ++y)
    for (int x = 0; x < out.width(); ++x) {
      int sum = 0;
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx)
          if (out.contains(x + dx, y + dy)) sum += out.at(x + dx, y + dy).a;
      const int a = std::max<int>(out.at(x, y).a, (sum + 4) / 9);
      if (a > 0) soft.set(x, y, {ink.r, ink.g, ink.b, static_cast<std::uint8_t>(a)});
    }
  return soft;
}

TileImage composite(const TileImage& background, const TileImage& text) {
  if (background.width() != text.width() || background.height() != text.height())
    throw Error(ErrorCode::Argument, "composite: dimension mismatch");
  TileImage out = background;
  for (int y = 0; y < text.height(); ++y)
    for (int x = 0; x < text.width(); ++x) {
      const Rgba s = text.at(x, y);
      if (s.a == 0) continue;
      const Rgba d = background.at(x, y);
      const double sa = s.a / 255.0;
      const double da = d.a / 255.0;
      const double oa = sa + da * (1.0 - sa);
      auto blend = [&](std::uint8_t sc, std::uint8_t dc) {
        const double v = (sc * sa + dc * da * (1.0 - sa)) / oa;
        return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
      };
      out.set(x, y, {blend(s.r, d.r), blend(s.g, d.g), blend(s.b, d.b),
                     static_cast<std::uint8_t>(std::clamp(std::lround(oa * 255.0), 0L, 255L))});
    }
  return out;
}

TileImage add_wornout_noise(const TileImage& image, const Mask& text_mask, double sigma, std::uint64_t seed) {
  if (sigma < 0) throw Error(ErrorCode::Argument, "noise sigma must be non-negative");
  if (text_mask.width != image.width() || text_mask.height != image.height())
    throw Error(ErrorCode::Argument, "noise mask does not match the image");
  TileImage out = image;
  if (sigma == 0) return out;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, sigma);
  for (int y = 0; y < image.height(); ++y)
    for (int x = 0; x < image.width(); ++x) {
      if (!text_mask.at(x, y)) continue;
      Rgba p = image.at(x, y);
      for (std::uint8_t* ch : {&p.r, &p.g, &p.b})
        *ch = static_cast<std::uint8_t>(std::clamp(std::lround(*ch + noise(rng)), 0L, 255L));
      out.set(x, y, p);
    }
  return out;
}

TileImage concat_tiles(const std::array<TileImage, 4>& tiles) {
  constexpr int kTile = 256;
  for (const TileImage& t : tiles)
    if (t.width() != kTile || t.height() != kTile)
      throw Error(ErrorCode::Argument, "concat_tiles: every tile must be 256x256");
  const bool addressed = std::all_of(tiles.begin(), tiles.end(), [](const TileImage& t) { return t.address.has_value(); });
  if (addressed) {
    const TileAddress& o = *tiles[0].address;
    const TileAddress expect[4] = {o, {o.zoom, o.x + 1, o.y, o.tile_px}, {o.zoom, o.x, o.y + 1, o.tile_px},
                                   {o.zoom, o.x + 1, o.y + 1, o.tile_px}};
    for (int i = 0; i < 4; ++i)
      if (!(*tiles[i].address == expect[i])) throw Error(ErrorCode::Argument, "concat_tiles: tiles are not grid-adjacent");
  }
  TileImage out(2 * kTile, 2 * kTile);
  for (int q = 0; q < 4; ++q) {
    const int ox = (q % 2) * kTile, oy = (q / 2) * kTile;
    for (int y = 0; y < kTile; ++y)
      for (int x = 0; x < kTile; ++x) out.set(ox + x, oy + y, tiles[q].at(x, y));
  }
  if (addressed) out.address = tiles[0].address;
  return out;
}

}  // namespace mapsynth
