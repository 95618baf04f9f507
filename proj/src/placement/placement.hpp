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
#include <string>
#include <vector>

#include "common/geometry.hpp"
#include "geo/feature.hpp"
#include "geo/style.hpp"
#include "raster/glyphs.hpp"

namespace mapsynth {

struct GlyphPose {
  char32_t ch = 0;
  Point anchor;               // pen origin on the baseline
  double rotation_rad = 0.0;  // (-pi, pi], y-down image convention
  double advance_px = 0.0;
};

/// Convex glyph box, vertices clockwise on screen.
struct Quad {
  std::array<Point, 4> v;
};

struct PlacedLabel {
  std::int64_t feature_id = 0;
  std::string text;
  FontSpec font;
  double size_px = 0.0;
  std::vector<GlyphPose> poses;
  int priority = 2;  // Large=0 < Medium=1 < Small=2
  std::uint32_t color_index = 0;
  std::vector<Quad> footprint;  // one box per glyph, padded
  /// Space reserved besides the text, e.g. the symbol of a point feature.
  /// Takes part in collision tests but is never drawn.
  std::vector<Quad> obstacles;
  bool overflow = false;        // area label larger than its polygon
};

struct Canvas {
  int width = 0;
  int height = 0;
};

struct PlacementOptions {
  double px_per_pt = 0.5;
  /// Multiplies per-glyph advances along lines.
  double letter_spacing = 1.0;
  /// Footprint inflation so accepted labels keep a gap.
  double padding_px = 1.0;
  /// Distance between a point feature and its label, as a fraction of size.
  double point_offset = 0.3;
  /// Maximum along-line fallback candidates per line label.
  int max_line_fallbacks = 4;
  /// Half side of the box reserved for a point feature's symbol.
  double point_symbol_px = 1.0;
};

/// Projects a feature's geometry into canvas pixels. `origin` is the tile at
/// the canvas's top-left corner.
struct SceneFrame {
  TileAddress origin;
  Canvas canvas;

  Point project(LonLat p) const { return project_to_pixel(p, origin); }
};

class LabelPlacer {
 public:
  LabelPlacer(const GlyphProvider& glyphs, PlacementOptions opts = {});

  /// Horizontal candidates at 8 compass offsets, ordered E, NE, SE, W, NW, SW,
  /// N, S. Candidates leaving the canvas are dropped.
  std::vector<PlacedLabel> place_point_label(std::int64_t id, const std::string& text, Point at, const FontSpec& font,
                                             Canvas canvas) const;

  /// Text on the longest line that can hold it, centred on its arclength
  /// midpoint; further candidates shift along the line. Each glyph follows the
  /// local tangent; lines drawn right-to-left are traversed in reverse.
  std::vector<PlacedLabel> place_line_label(std::int64_t id, const std::string& text,
                                            std::span<const std::vector<Point>> lines, const FontSpec& font,
                                            Canvas canvas) const;

  /// Horizontal candidates centred at the representative interior point of the
  /// largest polygon, then shifted up/down by one and two line heights.
  std::vector<PlacedLabel> place_area_label(std::int64_t id, const std::string& text,
                                            std::span<const std::vector<Ring>> polygons, const FontSpec& font,
                                            Canvas canvas) const;

  /// Dispatches on geometry kind after projecting into the scene frame.
  std::vector<PlacedLabel> candidates(const GeoFeature& feature, const FontSpec& font, const SceneFrame& frame) const;

  double size_px(const FontSpec& font) const { return font.size_pt * opts_.px_per_pt; }
  const PlacementOptions& options() const { return opts_; }

 private:
  PlacedLabel make_label(std::int64_t id, const std::string& text, const FontSpec& font) const;
  void add_glyph(PlacedLabel& label, char32_t ch, Point anchor, double rotation) const;
  std::vector<PlacedLabel> horizontal_at(std::int64_t id, const std::string& text, const FontSpec& font,
                                         std::span<const Point> baseline_origins) const;
  double text_width(const std::u32string& cps, const FontSpec& font) const;

  const GlyphProvider& glyphs_;
  PlacementOptions opts_;
};

/// Characters that receive a pose (everything except control characters).
std::u32string renderable_chars(const std::string& text);

/// True when every footprint box lies inside the canvas, allowing the
/// footprint padding (`tolerance`) to spill over the edge.
bool inside_canvas(const PlacedLabel& label, Canvas canvas, double tolerance = 0.0);

/// Interiors of two convex quads overlap (separating-axis test; touching
/// boundaries do not count).
bool interiors_overlap(const Quad& a, const Quad& b, double eps = 1e-9);
/// Footprints and obstacles of `a` against those of `b`.
bool footprints_overlap(const PlacedLabel& a, const PlacedLabel& b);

/// Greedy non-overlapping selection. Features are visited by (priority,
/// feature id); the first candidate whose footprint is interior-disjoint from
/// everything accepted so far wins; features with no such candidate are
/// dropped. Accepted labels get colour indices 1, 2, ... in acceptance order.
std::vector<PlacedLabel> resolve_collisions(std::span<const std::vector<PlacedLabel>> candidates);

/// Pole of inaccessibility of a polygon (outer ring + holes) to `precision`.
Point representative_point(std::span<const Ring> polygon, double precision = 1.0);

}  // namespace mapsynth
