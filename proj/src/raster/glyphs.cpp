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

#include "raster/glyphs.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "common/error.hpp"
#include "common/geometry.hpp"
#include "common/text.hpp"

namespace mapsynth {

namespace {

// Glyph outlines in font units: baseline at y = 0, y up, cap height 10,
// ascent 11, descent 3. Polylines are separated by '|'.
struct StrokeGlyph {
  double width;
  const char* strokes;
};

const std::map<char32_t, StrokeGlyph>& stroke_table() {
  static const std::map<char32_t, StrokeGlyph> table = {
      {U'A', {8, "0,0 4,10 8,0 | 1.6,4 6.4,4"}},
      {U'B', {7, "0,0 0,10 5,10 7,8.5 7,6.5 5,5 0,5 | 5,5 7,3.5 7,1.5 5,0 0,0"}},
      {U'C', {7, "7,8.5 5.5,10 1.5,10 0,8.5 0,1.5 1.5,0 5.5,0 7,1.5"}},
      {U'D', {7, "0,0 0,10 4.5,10 7,7.5 7,2.5 4.5,0 0,0"}},
      {U'E', {6, "6,10 0,10 0,0 6,0 | 0,5 4.5,5"}},
      {U'F', {6, "6,10 0,10 0,0 | 0,5 4.5,5"}},
      {U'G', {7, "7,8.5 5.5,10 1.5,10 0,8.5 0,1.5 1.5,0 5.5,0 7,1.5 7,4.5 4,4.5"}},
      {U'H', {7, "0,0 0,10 | 7,0 7,10 | 0,5 7,5"}},
      {U'I', {0, "0,0 0,10"}},
      {U'J', {5, "5,10 5,1.5 3.5,0 1.5,0 0,1.5"}},
      {U'K', {7, "0,0 0,10 | 7,10 0,3.5 | 2.2,5.5 7,0"}},
      {U'L', {6, "0,10 0,0 6,0"}},
      {U'M', {9, "0,0 0,10 4.5,3 9,10 9,0"}},
      {U'N', {7, "0,0 0,10 7,0 7,10"}},
      {U'O', {8, "1.5,0 6.5,0 8,1.5 8,8.5 6.5,10 1.5,10 0,8.5 0,1.5 1.5,0"}},
      {U'P', {7, "0,0 0,10 5,10 7,8.5 7,6.5 5,5 0,5"}},
      {U'Q', {8, "1.5,0 6.5,0 8,1.5 8,8.5 6.5,10 1.5,10 0,8.5 0,1.5 1.5,0 | 5,2.5 8,-1"}},
      {U'R', {7, "0,0 0,10 5,10 7,8.5 7,6.5 5,5 0,5 | 4,5 7,0"}},
      {U'S', {7, "7,8.5 5.5,10 1.5,10 0,8.5 0,6.5 1.5,5 5.5,5 7,3.5 7,1.5 5.5,0 1.5,0 0,1.5"}},
      {U'T', {8, "0,10 8,10 | 4,10 4,0"}},
      {U'U', {7, "0,10 0,1.5 1.5,0 5.5,0 7,1.5 7,10"}},
      {U'V', {8, "0,10 4,0 8,10"}},
      {U'W', {10, "0,10 2.5,0 5,7 7.5,0 10,10"}},
      {U'X', {7, "0,0 7,10 | 0,10 7,0"}},
      {U'Y', {8, "0,10 4,5 8,10 | 4,5 4,0"}},
      {U'Z', {7, "0,10 7,10 0,0 7,0"}},
      {U'0', {6, "1.5,0 4.5,0 6,1.5 6,8.5 4.5,10 1.5,10 0,8.5 0,1.5 1.5,0"}},
      {U'1', {4, "0,8 2,10 2,0 | 0,0 4,0"}},
      {U'2', {6, "0,8.5 1.5,10 4.5,10 6,8.5 6,6.5 0,0 6,0"}},
      {U'3', {6, "0,8.5 1.5,10 4.5,10 6,8.5 6,6.5 4.5,5 2,5 | 4.5,5 6,3.5 6,1.5 4.5,0 1.5,0 0,1.5"}},
      {U'4', {6, "5,0 5,10 0,3 6,3"}},
      {U'5', {6, "6,10 0,10 0,5.5 4.5,5.5 6,4 6,1.5 4.5,0 0,0"}},
      {U'6', {6, "5.5,10 2,10 0,7.5 0,1.5 1.5,0 4.5,0 6,1.5 6,4 4.5,5.5 0,5.5"}},
      {U'7', {6, "0,10 6,10 2,0"}},
      {U'8', {6, "1.5,5 0,6.5 0,8.5 1.5,10 4.5,10 6,8.5 6,6.5 4.5,5 1.5,5 0,3.5 0,1.5 1.5,0 4.5,0 6,1.5 6,3.5 4.5,5"}},
      {U'9', {6, "6,4.5 1.5,4.5 0,6 0,8.5 1.5,10 4.5,10 6,8.5 6,2.5 4,0 0.5,0"}},
      {U' ', {3, ""}},
      {U'-', {4, "0,4.5 4,4.5"}},
      {U'.', {0, "0,0 0,0.6"}},
      {U',', {1, "1,0.8 0,-2"}},
      {U'\'', {0, "0,10 0,7.5"}},
      {U'&', {7, "7,0 1.5,7 1.5,8.5 3,10 4.5,8.5 4.5,7 0,3 0,1.5 1.5,0 4,0 7,3"}},
      {U'/', {5, "0,0 5,10"}},
      {U'(', {2, "2,11 0,8 0,2 2,-1"}},
      {U')', {2, "0,11 2,8 2,2 0,-1"}},
  };
  return table;
}

constexpr StrokeGlyph kTofu{6, "0,0 6,0 6,10 0,10 0,0"};
constexpr double kEmUnits = 14.0;
constexpr double kAscentUnits = 11.0;
constexpr double kDescentUnits = 3.0;
constexpr double kBearingUnits = 1.5;
constexpr double kSmallCapScale = 0.7;

struct Style {
  double weight;  // stroke width as a fraction of the em size
  double slant;   // x shear per unit of height
  double width;   // horizontal scale
};

Style style_for(int font_id) {
  static constexpr double weights[] = {0.06, 0.085, 0.11, 0.135};
  const int id = ((font_id % 16) + 16) % 16;
  return {weights[id & 3], (id & 4) ? 0.2 : 0.0, (id & 8) ? 0.85 : 1.0};
}

using Polyline = std::vector<Point>;

std::vector<Polyline> parse_strokes(const char* spec) {
  std::vector<Polyline> out;
  std::istringstream in(spec);
  std::string tok;
  Polyline cur;
  while (in >> tok) {
    if (tok == "|") {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
      continue;
    }
    const auto comma = tok.find(',');
    cur.push_back({std::stod(tok.substr(0, comma)), std::stod(tok.substr(comma + 1))});
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

struct Resolved {
  const StrokeGlyph* glyph;
  bool small_cap;
};

Resolved resolve(char32_t cp) {
  const auto& t = stroke_table();
  if (auto it = t.find(cp); it != t.end()) return {&it->second, false};
  if (cp >= U'a' && cp <= U'z') return {&t.at(cp - U'a' + U'A'), true};
  return {nullptr, false};
}

}  // namespace

struct BuiltinStrokeFont::Impl {
  std::map<const StrokeGlyph*, std::vector<Polyline>> parsed;

  Impl() {
    for (const auto& [cp, g] : stroke_table()) parsed.emplace(&g, parse_strokes(g.strokes));
    parsed.emplace(&kTofu, parse_strokes(kTofu.strokes));
  }
};

BuiltinStrokeFont::BuiltinStrokeFont() : impl_(std::make_unique<Impl>()) {}
BuiltinStrokeFont::~BuiltinStrokeFont() = default;

bool BuiltinStrokeFont::has_glyph(char32_t cp, int) const { return resolve(cp).glyph != nullptr; }

double BuiltinStrokeFont::advance(char32_t cp, int font_id, double size_px) const {
  const Style st = style_for(font_id);
  const Resolved r = resolve(cp);
  const StrokeGlyph& g = r.glyph ? *r.glyph : kTofu;
  const double w = r.small_cap ? g.width * 0.85 : g.width;
  return (w + 2 * kBearingUnits) * st.width * size_px / kEmUnits;
}

FontMetrics BuiltinStrokeFont::metrics(int font_id, double size_px) const {
  const Style st = style_for(font_id);
  const double s = size_px / kEmUnits;
  const double half = std::max(1.0, st.weight * size_px) / 2;
  return {kAscentUnits * s + half, kDescentUnits * s + half};
}

GlyphBitmap BuiltinStrokeFont::rasterize(char32_t cp, int font_id, double size_px) const {
  const Style st = style_for(font_id);
  const Resolved r = resolve(cp);
  const StrokeGlyph& g = r.glyph ? *r.glyph : kTofu;
  const double s = size_px / kEmUnits;
  const double xs = r.small_cap ? 0.85 : 1.0;
  const double ys = r.small_cap ? kSmallCapScale : 1.0;
  const double half = std::max(1.0, st.weight * size_px) / 2;

  std::vector<std::pair<Point, Point>> segs;
  for (const Polyline& line : impl_->parsed.at(&g)) {
    std::vector<Point> px;
    for (const Point& p : line) {
      const double y = p.y * ys;
      px.push_back({(kBearingUnits + p.x * xs) * st.width * s + st.slant * y * s, -y * s});
    }
    for (std::size_t i = 0; i + 1 < px.size(); ++i) segs.emplace_back(px[i], px[i + 1]);
  }
  GlyphBitmap bmp;
  if (segs.empty()) return bmp;

  double min_x = 1e300, min_y = 1e300, max_x = -1e300, max_y = -1e300;
  for (const auto& [a, b] : segs) {
    min_x = std::min({min_x, a.x, b.x});
    min_y = std::min({min_y, a.y, b.y});
    max_x = std::max({max_x, a.x, b.x});
    max_y = std::max({max_y, a.y, b.y});
  }
  bmp.left = static_cast<int>(std::floor(min_x - half - 1));
  bmp.top = static_cast<int>(std::floor(min_y - half - 1));
  bmp.width = static_cast<int>(std::ceil(max_x + half + 1)) - bmp.left;
  bmp.height = static_cast<int>(std::ceil(max_y + half + 1)) - bmp.top;
  bmp.mask.assign(static_cast<std::size_t>(bmp.width) * bmp.height, 0);
  for (int j = 0; j < bmp.height; ++j) {
    for (int i = 0; i < bmp.width; ++i) {
      const Point c{bmp.left + i + 0.5, bmp.top + j + 0.5};
      for (const auto& [a, b] : segs) {
        if (distance_to_segment(c, a, b) <= half) {
          bmp.mask[static_cast<std::size_t>(j) * bmp.width + i] = 1;
          break;
        }
      }
    }
  }
  return bmp;
}

std::vector<std::filesystem::path> read_font_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open font config " + path.string());
  std::vector<std::filesystem::path> out;
  std::string line;
  while (std::getline(in, line)) {
    const std::string s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    std::filesystem::path p(s);
    if (p.is_relative()) p = path.parent_path() / p;
    out.push_back(p);
  }
  if (out.size() != 16)
    throw Error(ErrorCode::Argument,
                "font config " + path.string() + " lists " + std::to_string(out.size()) + " fonts, expected 16");
  return out;
}

}  // namespace mapsynth
