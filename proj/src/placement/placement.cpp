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

#include "placement/placement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <queue>

#include "common/text.hpp"

namespace mapsynth {

namespace {

double wrap_angle(double a) {
  a = std::remainder(a, 2 * std::numbers::pi);
  if (a <= -std::numbers::pi) a += 2 * std::numbers::pi;
  return a;
}

Point rotate(Point v, double c, double s) { return {v.x * c - v.y * s, v.x * s + v.y * c}; }

// Arclength parameterisation of a polyline with a tangent angle that is
// interpolated linearly between segment midpoints.
class PathSampler {
 public:
  explicit PathSampler(std::span<const Point> raw) {
    for (const Point& p : raw)
      if (pts_.empty() || !(p == pts_.back())) pts_.push_back(p);
    cum_.push_back(0.0);
    for (std::size_t i = 1; i < pts_.size(); ++i) {
      const Point d = pts_[i] - pts_[i - 1];
      const double len = norm(d);
      mids_.push_back(cum_.back() + len / 2);
      cum_.push_back(cum_.back() + len);
      angles_.push_back(std::atan2(d.y, d.x));
    }
    // Unwrap so that neighbouring segments never differ by more than pi.
    for (std::size_t i = 1; i < angles_.size(); ++i)
      angles_[i] = angles_[i - 1] + wrap_angle(angles_[i] - angles_[i - 1]);
  }

  double length() const { return cum_.empty() ? 0.0 : cum_.back(); }
  bool valid() const { return pts_.size() >= 2; }

  Point at(double s) const {
    s = std::clamp(s, 0.0, length());
    auto it = std::upper_bound(cum_.begin(), cum_.end(), s);
    std::size_t i = it == cum_.begin() ? 0 : static_cast<std::size_t>(it - cum_.begin()) - 1;
    i = std::min(i, pts_.size() - 2);
    const double seg = cum_[i + 1] - cum_[i];
    const double t = seg > 0 ? (s - cum_[i]) / seg : 0.0;
    return pts_[i] + (pts_[i + 1] - pts_[i]) * t;
  }

  double angle(double s) const {
    if (s <= mids_.front()) return wrap_angle(angles_.front());
    if (s >= mids_.back()) return wrap_angle(angles_.back());
    auto it = std::upper_bound(mids_.begin(), mids_.end(), s);
    const std::size_t k = static_cast<std::size_t>(it - mids_.begin()) - 1;
    const double t = (s - mids_[k]) / (mids_[k + 1] - mids_[k]);
    return wrap_angle(angles_[k] + (angles_[k + 1] - angles_[k]) * t);
  }

 private:
  std::vector<Point> pts_;
  std::vector<double> cum_;
  std::vector<double> mids_;
  std::vector<double> angles_;
};

double polyline_length(std::span<const Point> line) {
  double len = 0.0;
  for (std::size_t i = 1; i < line.size(); ++i) len += distance(line[i - 1], line[i]);
  return len;
}

Box footprint_box(const PlacedLabel& l) {
  std::vector<Point> pts;
  for (const Quad& q : l.footprint) pts.insert(pts.end(), q.v.begin(), q.v.end());
  for (const Quad& q : l.obstacles) pts.insert(pts.end(), q.v.begin(), q.v.end());
  return bounding_box(pts);
}

bool boxes_overlap(const Box& a, const Box& b) {
  return a.min_x < b.max_x && b.min_x < a.max_x && a.min_y < b.max_y && b.min_y < a.max_y;
}

// Signed distance to the polygon boundary, positive inside (even-odd).
double signed_distance(Point p, std::span<const Ring> rings) {
  bool inside = false;
  double best = std::numeric_limits<double>::infinity();
  for (const Ring& ring : rings) {
    const std::size_t n = ring.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
      const Point& a = ring[i];
      const Point& b = ring[j];
      if ((a.y > p.y) != (b.y > p.y) && p.x < a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y)) inside = !inside;
      best = std::min(best, distance_to_segment(p, a, b));
    }
  }
  return inside ? best : -best;
}

}  // namespace

std::u32string renderable_chars(const std::string& text) {
  std::u32string out;
  for (char32_t c : decode_utf8(text))
    if (c >= 0x20 && c != 0x7F) out.push_back(c);
  return out;
}

LabelPlacer::LabelPlacer(const GlyphProvider& glyphs, PlacementOptions opts) : glyphs_(glyphs), opts_(opts) {}

PlacedLabel LabelPlacer::make_label(std::int64_t id, const std::string& text, const FontSpec& font) const {
  PlacedLabel l;
  l.feature_id = id;
  l.text = text;
  l.font = font;
  l.size_px = size_px(font);
  l.priority = static_cast<int>(font.group);
  return l;
}

void LabelPlacer::add_glyph(PlacedLabel& label, char32_t ch, Point anchor, double rotation) const {
  const double adv = glyphs_.advance(ch, label.font.font_id, label.size_px);
  const FontMetrics m = glyphs_.metrics(label.font.font_id, label.size_px);
  const GlyphBitmap bmp = glyphs_.rasterize(ch, label.font.font_id, label.size_px);
  double x0 = 0.0, x1 = adv, y0 = -m.ascent, y1 = m.descent;
  if (!bmp.empty()) {
    x0 = std::min<double>(x0, bmp.left);
    x1 = std::max<double>(x1, bmp.left + bmp.width);
    y0 = std::min<double>(y0, bmp.top);
    y1 = std::max<double>(y1, bmp.top + bmp.height);
  }
  const double pad = opts_.padding_px;
  x0 -= pad, x1 += pad, y0 -= pad, y1 += pad;
  const double c = std::cos(rotation), s = std::sin(rotation);
  Quad q;
  // Clockwise on screen: top-left, top-right, bottom-right, bottom-left.
  q.v = {anchor + rotate({x0, y0}, c, s), anchor + rotate({x1, y0}, c, s), anchor + rotate({x1, y1}, c, s),
         anchor + rotate({x0, y1}, c, s)};
  label.poses.push_back({ch, anchor, wrap_angle(rotation), adv});
  label.footprint.push_back(q);
}

double LabelPlacer::text_width(const std::u32string& cps, const FontSpec& font) const {
  double w = 0.0;
  for (char32_t c : cps) w += glyphs_.advance(c, font.font_id, size_px(font));
  return w;
}

std::vector<PlacedLabel> LabelPlacer::horizontal_at(std::int64_t id, const std::string& text, const FontSpec& font,
                                                    std::span<const Point> baseline_origins) const {
  const std::u32string cps = renderable_chars(text);
  std::vector<PlacedLabel> out;
  for (const Point& origin : baseline_origins) {
    PlacedLabel l = make_label(id, text, font);
    double x = origin.x;
    for (char32_t c : cps) {
      add_glyph(l, c, {x, origin.y}, 0.0);
      x += l.poses.back().advance_px;
    }
    out.push_back(std::move(l));
  }
  return out;
}

bool inside_canvas(const PlacedLabel& label, Canvas canvas, double tolerance) {
  const double pad = tolerance + 1e-9;
  for (const Quad& q : label.footprint)
    for (const Point& p : q.v)
      if (p.x < -pad || p.y < -pad || p.x > canvas.width + pad || p.y > canvas.height + pad) return false;
  return true;
}

std::vector<PlacedLabel> LabelPlacer::place_point_label(std::int64_t id, const std::string& text, Point at,
                                                        const FontSpec& font, Canvas canvas) const {
  const std::u32string cps = renderable_chars(text);
  if (cps.empty()) return {};
  const double w = text_width(cps, font);
  if (w > canvas.width) return {};
  const double sz = size_px(font);
  const FontMetrics m = glyphs_.metrics(font.font_id, sz);
  const double d = opts_.point_offset * sz;
  // Baseline y that puts the text box's vertical centre / bottom / top at a
  // given y.
  const double centered = at.y + (m.ascent - m.descent) / 2;
  const double above = at.y - d - m.descent;
  const double below = at.y + d + m.ascent;
  const double right = at.x + d;
  const double left = at.x - d - w;
  const double mid = at.x - w / 2;
  const Point origins[] = {{right, centered}, {right, above}, {right, below}, {left, centered},
                           {left, above},     {left, below},  {mid, above},   {mid, below}};
  const double r = opts_.point_symbol_px;
  const Quad symbol{{{{at.x - r, at.y - r}, {at.x + r, at.y - r}, {at.x + r, at.y + r}, {at.x - r, at.y + r}}}};
  std::vector<PlacedLabel> out;
  for (auto& l : horizontal_at(id, text, font, origins)) {
    if (!inside_canvas(l, canvas, opts_.padding_px)) continue;
    if (r > 0) l.obstacles.push_back(symbol);
    out.push_back(std::move(l));
  }
  return out;
}

std::vector<PlacedLabel> LabelPlacer::place_line_label(std::int64_t id, const std::string& text,
                                                       std::span<const std::vector<Point>> lines, const FontSpec& font,
                                                       Canvas canvas) const {
  const std::u32string cps = renderable_chars(text);
  if (cps.empty() || lines.empty()) return {};
  const double sz = size_px(font);
  std::vector<double> advances, widths;
  for (char32_t c : cps) {
    advances.push_back(glyphs_.advance(c, font.font_id, sz));
    widths.push_back(advances.back() * opts_.letter_spacing);
  }
  const double total = std::accumulate(widths.begin(), widths.end(), 0.0);

  std::vector<std::size_t> order(lines.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return polyline_length(lines[a]) > polyline_length(lines[b]);
  });

  std::vector<PlacedLabel> out;
  for (std::size_t li : order) {
    std::vector<Point> forward(lines[li].begin(), lines[li].end());
    std::vector<Point> backward(forward.rbegin(), forward.rend());
    const PathSampler fwd(forward), bwd(backward);
    if (!fwd.valid()) continue;
    const double len = fwd.length();
    if (len < total) continue;

    std::vector<double> centres{len / 2};
    for (int k = 1; static_cast<int>(centres.size()) <= opts_.max_line_fallbacks; ++k) {
      bool any = false;
      for (double sign : {1.0, -1.0}) {
        const double c = len / 2 + sign * k * total / 2;
        if (c - total / 2 >= 0 && c + total / 2 <= len &&
            static_cast<int>(centres.size()) <= opts_.max_line_fallbacks) {
          centres.push_back(c);
          any = true;
        }
      }
      if (!any) break;
    }

    for (double centre : centres) {
      const PathSampler* path = &fwd;
      double start = centre - total / 2;
      const Point chord = fwd.at(start + total) - fwd.at(start);
      if (chord.x < 0) {
        path = &bwd;
        start = len - centre - total / 2;
      }
      PlacedLabel l = make_label(id, text, font);
      double s = start;
      for (std::size_t i = 0; i < cps.size(); ++i) {
        const double mid = s + widths[i] / 2;
        const double theta = path->angle(mid);
        const Point anchor = path->at(mid) - Point{std::cos(theta), std::sin(theta)} * (advances[i] / 2);
        add_glyph(l, cps[i], anchor, theta);
        s += widths[i];
      }
      if (inside_canvas(l, canvas, opts_.padding_px)) out.push_back(std::move(l));
    }
  }
  return out;
}

std::vector<PlacedLabel> LabelPlacer::place_area_label(std::int64_t id, const std::string& text,
                                                       std::span<const std::vector<Ring>> polygons,
                                                       const FontSpec& font, Canvas canvas) const {
  const std::u32string cps = renderable_chars(text);
  if (cps.empty()) return {};
  const std::vector<Ring>* best = nullptr;
  double best_area = 0.0;
  for (const auto& poly : polygons) {
    if (poly.empty()) continue;
    const double a = polygon_area(poly.front());
    if (a > best_area) {
      best_area = a;
      best = &poly;
    }
  }
  if (!best || best_area < 1e-9) return {};

  const Point rep = representative_point(*best);
  const double sz = size_px(font);
  const FontMetrics m = glyphs_.metrics(font.font_id, sz);
  const double w = text_width(cps, font);
  const double h = m.ascent + m.descent;
  std::vector<Point> origins;
  for (double dy : {0.0, -h, h, -2 * h, 2 * h}) origins.push_back({rep.x - w / 2, rep.y + (m.ascent - m.descent) / 2 + dy});

  std::vector<PlacedLabel> out;
  for (auto& l : horizontal_at(id, text, font, origins)) {
    if (!inside_canvas(l, canvas, opts_.padding_px)) continue;
    const double y = l.poses.front().anchor.y;
    const Point corners[] = {{rep.x - w / 2, y - m.ascent}, {rep.x + w / 2, y - m.ascent},
                             {rep.x + w / 2, y + m.descent}, {rep.x - w / 2, y + m.descent}};
    for (const Point& c : corners)
      if (signed_distance(c, *best) < 0) l.overflow = true;
    out.push_back(std::move(l));
  }
  return out;
}

std::vector<PlacedLabel> LabelPlacer::candidates(const GeoFeature& f, const FontSpec& font,
                                                 const SceneFrame& frame) const {
  return std::visit(
      [&](const auto& g) -> std::vector<PlacedLabel> {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, PointGeometry>) {
          return place_point_label(f.id, f.name, frame.project(g.at), font, frame.canvas);
        } else if constexpr (std::is_same_v<T, PolylineSet>) {
          std::vector<std::vector<Point>> lines;
          for (const auto& line : g.lines) {
            std::vector<Point> px;
            for (const LonLat& p : line) px.push_back(frame.project(p));
            lines.push_back(std::move(px));
          }
          return place_line_label(f.id, f.name, lines, font, frame.canvas);
        } else {
          std::vector<std::vector<Ring>> polys;
          for (const auto& poly : g.polygons) {
            std::vector<Ring> rings;
            for (const auto& ring : poly) {
              Ring r;
              for (std::size_t i = 0; i + 1 < ring.size(); ++i) r.push_back(frame.project(ring[i]));
              rings.push_back(std::move(r));
            }
            polys.push_back(std::move(rings));
          }
          return place_area_label(f.id, f.name, polys, font, frame.canvas);
        }
      },
      f.geometry);
}

bool interiors_overlap(const Quad& a, const Quad& b, double eps) {
  for (const Quad* q : {&a, &b}) {
    for (std::size_t i = 0; i < 4; ++i) {
      const Point e = q->v[(i + 1) % 4] - q->v[i];
      const Point axis{-e.y, e.x};
      if (axis.x == 0.0 && axis.y == 0.0) continue;
      double amin = 1e300, amax = -1e300, bmin = 1e300, bmax = -1e300;
      for (const Point& p : a.v) {
        const double d = dot(p, axis);
        amin = std::min(amin, d);
        amax = std::max(amax, d);
      }
      for (const Point& p : b.v) {
        const double d = dot(p, axis);
        bmin = std::min(bmin, d);
        bmax = std::max(bmax, d);
      }
      const double tol = eps * norm(axis);
      if (amax <= bmin + tol || bmax <= amin + tol) return false;
    }
  }
  return true;
}

bool footprints_overlap(const PlacedLabel& a, const PlacedLabel& b) {
  if (!boxes_overlap(footprint_box(a), footprint_box(b))) return false;
  auto any_pair = [](const std::vector<Quad>& qs, const std::vector<Quad>& rs) {
    for (const Quad& q : qs)
      for (const Quad& r : rs)
        if (interiors_overlap(q, r)) return true;
    return false;
  };
  return any_pair(a.footprint, b.footprint) || any_pair(a.footprint, b.obstacles) ||
         any_pair(a.obstacles, b.footprint) || any_pair(a.obstacles, b.obstacles);
}

std::vector<PlacedLabel> resolve_collisions(std::span<const std::vector<PlacedLabel>> candidates) {
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < candidates.size(); ++i)
    if (!candidates[i].empty()) order.push_back(i);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const PlacedLabel& la = candidates[a].front();
    const PlacedLabel& lb = candidates[b].front();
    if (la.priority != lb.priority) return la.priority < lb.priority;
    return la.feature_id < lb.feature_id;
  });

  std::vector<PlacedLabel> accepted;
  for (std::size_t idx : order) {
    for (const PlacedLabel& cand : candidates[idx]) {
      const bool clash = std::any_of(accepted.begin(), accepted.end(),
                                     [&](const PlacedLabel& other) { return footprints_overlap(cand, other); });
      if (clash) continue;
      accepted.push_back(cand);
      accepted.back().color_index = static_cast<std::uint32_t>(accepted.size());
      break;
    }
  }
  return accepted;
}

Point representative_point(std::span<const Ring> polygon, double precision) {
  if (polygon.empty() || polygon.front().empty()) return {};
  const Box box = bounding_box(polygon.front());
  const double cell = std::min(box.width(), box.height());
  if (cell <= 0.0) return polygon.front().front();

  struct Cell {
    Point c;
    double h, d, max;
  };
  auto make = [&](Point c, double h) {
    const double d = signed_distance(c, polygon);
    return Cell{c, h, d, d + h * std::numbers::sqrt2};
  };
  auto cmp = [](const Cell& a, const Cell& b) { return a.max < b.max; };
  std::priority_queue<Cell, std::vector<Cell>, decltype(cmp)> queue(cmp);
  const double h = cell / 2;
  for (double x = box.min_x; x < box.max_x; x += cell)
    for (double y = box.min_y; y < box.max_y; y += cell) queue.push(make({x + h, y + h}, h));

  Cell best = make(centroid(polygon.front()), 0);
  const Cell mid = make({box.min_x + box.width() / 2, box.min_y + box.height() / 2}, 0);
  if (mid.d > best.d) best = mid;
  while (!queue.empty()) {
    const Cell c = queue.top();
    queue.pop();
    if (c.d > best.d) best = c;
    if (c.max - best.d <= precision) continue;
    const double hh = c.h / 2;
    queue.push(make({c.c.x - hh, c.c.y - hh}, hh));
    queue.push(make({c.c.x + hh, c.c.y - hh}, hh));
    queue.push(make({c.c.x - hh, c.c.y + hh}, hh));
    queue.push(make({c.c.x + hh, c.c.y + hh}, hh));
  }
  return best.c;
}

}  // namespace mapsynth
