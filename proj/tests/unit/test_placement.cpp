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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "placement/placement.hpp"
#include "support/clip_oracle.hpp"
#include "support/fixtures.hpp"

using namespace mapsynth;
using mapsynth::testing::builtin_font;
using mapsynth::testing::Gen;
using mapsynth::testing::overlap_area;

namespace {

const FontSpec kSmall{FontGroup::Small, 24, 2};

// Glyph raster boxes of a horizontal label, without footprint padding.
bool glyph_boxes_inside(const PlacedLabel& l, Canvas c) {
  for (const GlyphPose& p : l.poses) {
    const GlyphBitmap b = builtin_font().rasterize(p.ch, l.font.font_id, l.size_px);
    if (b.empty()) continue;
    if (p.anchor.x + b.left < 0 || p.anchor.x + b.left + b.width > c.width) return false;
    if (p.anchor.y + b.top < 0 || p.anchor.y + b.top + b.height > c.height) return false;
  }
  return true;
}

double text_extent_centre_x(const PlacedLabel& l) {
  return (l.poses.front().anchor.x + l.poses.back().anchor.x + l.poses.back().advance_px) / 2;
}

}  // namespace

TEST_CASE("renderable_chars drops control characters only") {
  CHECK(renderable_chars("A B") == U"A B");
  CHECK(renderable_chars("A\tB\n") == U"AB");
  CHECK(renderable_chars("Zürich") == U"Zürich");
}

TEST_CASE("point label: preferred candidate is to the right, horizontal") {
  LabelPlacer placer(builtin_font());
  const Point at{256, 256};
  const auto c = placer.place_point_label(1, "Camden", at, kSmall, Canvas{512, 512});
  REQUIRE(c.size() == 8);
  CHECK(c[0].poses.front().anchor.x > at.x);
  for (const auto& l : c)
    for (const auto& p : l.poses) CHECK(p.rotation_rad == 0.0);
  // Vertically centred on the point.
  const FontMetrics m = builtin_font().metrics(kSmall.font_id, placer.size_px(kSmall));
  CHECK(c[0].poses.front().anchor.y - m.ascent + (m.ascent + m.descent) / 2 == doctest::Approx(at.y));
  // W candidate ends left of the point.
  CHECK(c[3].poses.back().anchor.x + c[3].poses.back().advance_px < at.x);
}

TEST_CASE("point label: one pose per renderable character") {
  LabelPlacer placer(builtin_font());
  for (const auto& l : placer.place_point_label(1, "A", {100, 100}, kSmall, Canvas{200, 200})) CHECK(l.poses.size() == 1);
  for (const auto& l : placer.place_point_label(1, "St. Mary", {100, 100}, kSmall, Canvas{200, 200})) {
    CHECK(l.poses.size() == 8);
    CHECK(l.footprint.size() == 8);
  }
}

TEST_CASE("point label: right edge keeps only left-side candidates inside the canvas") {
  LabelPlacer placer(builtin_font());
  const Canvas canvas{300, 200};
  const Point at{296, 100};
  const auto c = placer.place_point_label(1, "Edge", at, kSmall, canvas);
  REQUIRE_FALSE(c.empty());
  for (const auto& l : c) {
    CHECK(glyph_boxes_inside(l, canvas));
    CHECK(l.poses.back().anchor.x + l.poses.back().advance_px <= at.x);
  }
  // The far-right candidates' glyph boxes really would leave the canvas.
  const auto free = placer.place_point_label(1, "Edge", {150, 100}, kSmall, canvas);
  PlacedLabel east = free[0];
  for (auto& p : east.poses) p.anchor.x += at.x - 150;
  CHECK_FALSE(glyph_boxes_inside(east, canvas));
}

TEST_CASE("point label: text wider than the canvas gives no candidates") {
  LabelPlacer placer(builtin_font());
  CHECK(placer.place_point_label(1, "A VERY LONG NAME INDEED", {20, 20}, kSmall, Canvas{40, 40}).empty());
}

TEST_CASE("line label: straight horizontal line, symmetric and equally spaced") {
  LabelPlacer placer(builtin_font());
  const std::vector<std::vector<Point>> lines{{{50, 100}, {350, 100}}};
  const auto c = placer.place_line_label(3, "AB", lines, kSmall, Canvas{400, 200});
  REQUIRE_FALSE(c.empty());
  const PlacedLabel& l = c.front();
  REQUIRE(l.poses.size() == 2);
  for (const auto& p : l.poses) {
    CHECK(p.rotation_rad == 0.0);
    CHECK(p.anchor.y == doctest::Approx(100.0));
  }
  CHECK(text_extent_centre_x(l) == doctest::Approx(200.0));
  CHECK(l.poses[1].anchor.x - l.poses[0].anchor.x == doctest::Approx(l.poses[0].advance_px));

  const auto word = placer.place_line_label(3, "HARROW ROAD", lines, kSmall, Canvas{400, 200}).front();
  for (std::size_t i = 1; i < word.poses.size(); ++i)
    CHECK(word.poses[i].anchor.x - word.poses[i - 1].anchor.x == doctest::Approx(word.poses[i - 1].advance_px));
}

TEST_CASE("line label: letter spacing widens the gaps") {
  PlacementOptions wide;
  wide.letter_spacing = 1.5;
  LabelPlacer placer(builtin_font(), wide);
  const std::vector<std::vector<Point>> lines{{{0, 100}, {400, 100}}};
  const auto l = placer.place_line_label(3, "HH", lines, kSmall, Canvas{400, 200}).front();
  const double adv = l.poses[0].advance_px;
  CHECK(l.poses[1].anchor.x - l.poses[0].anchor.x == doctest::Approx(1.5 * adv));
    // Each glyph sits centred in its widened slot, so the text stays centred.
  CHECK(text_extent_centre_x(l) == doctest::Approx(200.0));
}

TEST_CASE("line label: glyph rotations follow the tangent of a semicircular arc") {
  LabelPlacer placer(builtin_font());
  const Point centre{250, 300};
  const double r = 180;
  const int n = 20000;
  std::vector<Point> arc;
  for (int i = 0; i <= n; ++i) {
    const double phi = std::numbers::pi * (1.0 + double(i) / n);  // upper half, left to right
    arc.push_back({centre.x + r * std::cos(phi), centre.y + r * std::sin(phi)});
  }
  const std::vector<std::vector<Point>> lines{arc};
  const auto c = placer.place_line_label(4, "SERPENTINE", lines, kSmall, Canvas{500, 400});
  REQUIRE_FALSE(c.empty());
  double worst = 0;
  for (const auto& p : c.front().poses) {
    // Point on the path under the glyph centre.
    const Point mid = p.anchor + Point{std::cos(p.rotation_rad), std::sin(p.rotation_rad)} * (p.advance_px / 2);
    const double phi = std::atan2(mid.y - centre.y, mid.x - centre.x);
    const double tangent = std::remainder(phi + std::numbers::pi / 2, 2 * std::numbers::pi);
    worst = std::max(worst, std::abs(std::remainder(p.rotation_rad - tangent, 2 * std::numbers::pi)));
    CHECK(std::abs(norm(mid - centre) - r) < 1e-3);
  }
  CHECK(worst < 1e-6);
  // Glyph order follows increasing arclength (left to right over the top).
  const auto& poses = c.front().poses;
  for (std::size_t i = 1; i < poses.size(); ++i) CHECK(poses[i].anchor.x > poses[i - 1].anchor.x);
}

TEST_CASE("line label: right-to-left line is traversed in reverse") {
  LabelPlacer placer(builtin_font());
  const std::vector<std::vector<Point>> lines{{{350, 100}, {50, 100}}};
  const auto l = placer.place_line_label(5, "WEST END", lines, kSmall, Canvas{400, 200}).front();
  for (std::size_t i = 0; i < l.poses.size(); ++i) {
    CHECK(l.poses[i].rotation_rad == doctest::Approx(0.0));
    if (i) CHECK(l.poses[i].anchor.x > l.poses[i - 1].anchor.x);
  }
  CHECK(text_extent_centre_x(l) == doctest::Approx(200.0));
}

TEST_CASE("line label: too short, and longest part is used") {
  LabelPlacer placer(builtin_font());
  const std::vector<std::vector<Point>> shorty{{{10, 10}, {20, 10}}};
  CHECK(placer.place_line_label(5, "LONG STREET", shorty, kSmall, Canvas{400, 200}).empty());
  const std::vector<std::vector<Point>> parts{{{10, 10}, {30, 10}}, {{20, 150}, {380, 150}}};
  const auto c = placer.place_line_label(5, "MAIN", parts, kSmall, Canvas{400, 200});
  REQUIRE_FALSE(c.empty());
  CHECK(c.front().poses.front().anchor.y == doctest::Approx(150.0));
  CHECK(text_extent_centre_x(c.front()) == doctest::Approx(200.0));
}

TEST_CASE("area label: square is centred, C-shape uses an interior point") {
  LabelPlacer placer(builtin_font());
  const std::vector<std::vector<Ring>> square{{{{100, 100}, {300, 100}, {300, 300}, {100, 300}}}};
  const auto c = placer.place_area_label(6, "PARK", square, kSmall, Canvas{400, 400});
  REQUIRE_FALSE(c.empty());
  CHECK(text_extent_centre_x(c.front()) == doctest::Approx(200.0).epsilon(0.005));
  const FontMetrics m = builtin_font().metrics(kSmall.font_id, placer.size_px(kSmall));
  const double box_mid_y = c.front().poses.front().anchor.y + (m.descent - m.ascent) / 2;
  CHECK(box_mid_y == doctest::Approx(200.0).epsilon(0.005));
  CHECK_FALSE(c.front().overflow);

  // C opening to the right; its centroid falls in the notch.
  const Ring cshape{{100, 100}, {300, 100}, {300, 140}, {140, 140}, {140, 260}, {300, 260}, {300, 300}, {100, 300}};
  const Point cen = centroid(cshape);
  CHECK(locate(cen, cshape) == Containment::Outside);
  const std::vector<Ring> poly{cshape};
  const Point rep = representative_point(poly);
  CHECK(locate(rep, cshape) == Containment::Inside);
  const std::vector<std::vector<Ring>> polys{poly};
  const auto cc = placer.place_area_label(6, "X", polys, kSmall, Canvas{400, 400});
  REQUIRE_FALSE(cc.empty());
  CHECK(text_extent_centre_x(cc.front()) == doctest::Approx(rep.x));
}

TEST_CASE("area label: small polygon overflows, zero area gives nothing") {
  LabelPlacer placer(builtin_font());
  const std::vector<std::vector<Ring>> tiny{{{{200, 200}, {205, 200}, {205, 205}, {200, 205}}}};
  const auto c = placer.place_area_label(7, "ALLOTMENTS", tiny, kSmall, Canvas{400, 400});
  REQUIRE_FALSE(c.empty());
  CHECK(c.front().overflow);
  const std::vector<std::vector<Ring>> flat{{{{100, 100}, {200, 100}, {300, 100}}}};
  CHECK(placer.place_area_label(7, "FLAT", flat, kSmall, Canvas{400, 400}).empty());
}

TEST_CASE("area label: largest polygon of a multipolygon wins") {
  LabelPlacer placer(builtin_font());
  const std::vector<std::vector<Ring>> polys{{{{10, 10}, {40, 10}, {40, 40}, {10, 40}}},
                                             {{{200, 200}, {380, 200}, {380, 380}, {200, 380}}}};
  const auto c = placer.place_area_label(8, "ISLE", polys, kSmall, Canvas{400, 400});
  REQUIRE_FALSE(c.empty());
  CHECK(text_extent_centre_x(c.front()) == doctest::Approx(290.0).epsilon(0.005));
}

TEST_CASE("resolve_collisions: distant labels both accepted, duplicates keep the lower id") {
  LabelPlacer placer(builtin_font());
  const Canvas canvas{512, 512};
  std::vector<std::vector<PlacedLabel>> far{placer.place_point_label(2, "NORTH", {100, 80}, kSmall, canvas),
                                            placer.place_point_label(1, "SOUTH", {100, 400}, kSmall, canvas)};
  const auto acc = resolve_collisions(far);
  REQUIRE(acc.size() == 2);
  CHECK(acc[0].feature_id == 1);
  CHECK(acc[0].color_index == 1);
  CHECK(acc[1].color_index == 2);

  // Co-located point features share the reserved symbol box, so the second
  // collides on every candidate.
  std::vector<std::vector<PlacedLabel>> dup{placer.place_point_label(9, "TWIN", {200, 200}, kSmall, canvas),
                                            placer.place_point_label(4, "TWIN", {200, 200}, kSmall, canvas)};
  REQUIRE(dup[0].size() == 8);
  const auto one = resolve_collisions(dup);
  REQUIRE(one.size() == 1);
  CHECK(one[0].feature_id == 4);
}

TEST_CASE("resolve_collisions: identical candidate lists, only the first by id survives") {
  LabelPlacer placer(builtin_font());
  auto cands = placer.place_point_label(1, "SAME", {100, 100}, kSmall, Canvas{300, 300});
  cands.resize(1);
  auto other = cands;
  for (auto& l : other) l.feature_id = 0;
  std::vector<std::vector<PlacedLabel>> lists{cands, other};
  const auto acc = resolve_collisions(lists);
  REQUIRE(acc.size() == 1);
  CHECK(acc[0].feature_id == 0);
}

TEST_CASE("resolve_collisions: priority beats feature id") {
  LabelPlacer placer(builtin_font());
  const Canvas canvas{300, 300};
  auto small = placer.place_point_label(1, "SMALL", {100, 100}, kSmall, canvas);
  auto large = placer.place_point_label(50, "LARGE", {100, 100}, FontSpec{FontGroup::Large, 60, 1}, canvas);
  small.resize(1);
  large.resize(1);
  REQUIRE(footprints_overlap(small[0], large[0]));
  std::vector<std::vector<PlacedLabel>> lists{small, large};
  const auto acc = resolve_collisions(lists);
  REQUIRE(acc.size() == 1);
  CHECK(acc[0].feature_id == 50);
  CHECK(acc[0].priority == 0);
}

TEST_CASE("resolve_collisions: 50 random labels are pairwise disjoint") {
  LabelPlacer placer(builtin_font());
  const Canvas canvas{256, 256};
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Gen gen(seed);
    std::vector<std::vector<PlacedLabel>> lists;
    for (int i = 0; i < 50; ++i) {
      const FontSpec f{static_cast<FontGroup>(gen.uniform_int(0, 2)), gen.uniform_int(20, 40), gen.uniform_int(0, 15)};
      const std::string text = gen.word(2, 7);
      if (gen.coin(0.6)) {
        lists.push_back(placer.place_point_label(i, text, {gen.uniform(0, 256), gen.uniform(0, 256)}, f, canvas));
      } else {
        const Point a{gen.uniform(0, 256), gen.uniform(0, 256)}, b{gen.uniform(0, 256), gen.uniform(0, 256)};
        const Point m = (a + b) * 0.5 + Point{gen.uniform(-40, 40), gen.uniform(-40, 40)};
        const std::vector<std::vector<Point>> lines{{a, m, b}};
        lists.push_back(placer.place_line_label(i, text, lines, f, canvas));
      }
    }
    const auto acc = resolve_collisions(lists);
    CHECK(acc.size() >= 3);
    for (std::size_t i = 0; i < acc.size(); ++i)
      for (std::size_t j = i + 1; j < acc.size(); ++j) CHECK(overlap_area(acc[i], acc[j]) < 1e-6);
    // Deterministic for the same input.
    const auto again = resolve_collisions(lists);
    REQUIRE(again.size() == acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i) CHECK(again[i].feature_id == acc[i].feature_id);
  }
}

TEST_CASE("interiors_overlap: touching boxes do not overlap") {
  const Quad a{{{{0, 0}, {10, 0}, {10, 10}, {0, 10}}}};
  const Quad b{{{{10, 0}, {20, 0}, {20, 10}, {10, 10}}}};
  const Quad c{{{{9, 5}, {19, 5}, {19, 15}, {9, 15}}}};
  CHECK_FALSE(interiors_overlap(a, b));
  CHECK(interiors_overlap(a, c));
}

TEST_CASE("candidates: dispatch on geometry kind through the scene frame") {
  LabelPlacer placer(builtin_font());
  const SceneFrame frame{TileAddress{16, 32744, 21792, 256}, Canvas{512, 512}};
  const LonLat centre = pixel_to_lonlat({256, 256}, frame.origin);
  GeoFeature pt{1, "Soho", "suburb", PointGeometry{centre}};
  const auto c = placer.candidates(pt, kSmall, frame);
  REQUIRE_FALSE(c.empty());
  CHECK(c[0].poses.front().anchor.x > 256);

  const LonLat west = pixel_to_lonlat({60, 300}, frame.origin), east = pixel_to_lonlat({450, 300}, frame.origin);
  GeoFeature line{2, "Strand", "street", PolylineSet{{{west, east}}}};
  const auto lc = placer.candidates(line, kSmall, frame);
  REQUIRE_FALSE(lc.empty());
  CHECK(lc[0].poses.front().anchor.y == doctest::Approx(300.0).epsilon(1e-6));
}
