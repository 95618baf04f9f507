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
#include <random>
#include <string>
#include <vector>

#include "annotate/annotate.hpp"
#include "placement/placement.hpp"
#include "raster/glyphs.hpp"
#include "raster/render.hpp"

namespace mapsynth::testing {

/// Hand-rolled generators on top of a seeded engine.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  std::string word(int min_len, int max_len) {
    static const char kLetters[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZ";
    const int n = uniform_int(min_len, max_len);
    std::string s;
    for (int i = 0; i < n; ++i) s.push_back(kLetters[uniform_int(0, 25)]);
    return s;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline const BuiltinStrokeFont& builtin_font() {
  static const BuiltinStrokeFont font;
  return font;
}

/// One horizontal word rendered at `at` into a w x h coloured layer with colour index 1.
struct RenderedWord {
  PlacedLabel label;
  TileImage colored;
  std::vector<Pixel> pixels;
};

inline RenderedWord render_word(const std::string& text, Point at, int size_pt, int font_id, int w = 512, int h = 512) {
  LabelPlacer placer(builtin_font());
  FontSpec font{FontGroup::Medium, size_pt, font_id};
  auto cands = placer.place_point_label(1, text, at, font, Canvas{w, h});
  RenderedWord out;
  if (cands.empty()) return out;
  out.label = cands.front();
  out.label.color_index = 1;
  out.colored = render_colored_layer(std::span<const PlacedLabel>(&out.label, 1), w, h, builtin_font());
  out.pixels = extract_label_pixels(out.colored, 1);
  return out;
}

/// Andrew's monotone chain; strictly convex, positive shoelace orientation.
inline Ring convex_hull_oracle(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end(), [](Point a, Point b) { return a.x != b.x ? a.x < b.x : a.y < b.y; });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  Ring hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && orient(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && orient(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

/// Brute-force distance transform maximum over F against every background pixel of the image.
inline double brute_force_height(const std::vector<Pixel>& fg, int w, int h) {
  std::vector<unsigned char> m(static_cast<std::size_t>(w) * h, 0);
  for (Pixel p : fg) m[static_cast<std::size_t>(p.y) * w + p.x] = 1;
  double best = 0;
  for (Pixel f : fg) {
    double nearest = 1e300;
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x)
        if (!m[static_cast<std::size_t>(y) * w + x]) {
          const double dx = x - f.x, dy = y - f.y;
          nearest = std::min(nearest, dx * dx + dy * dy);
        }
    best = std::max(best, nearest);
  }
  return std::sqrt(best);
}

}  // namespace mapsynth::testing
