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

#include "annotate/annotate.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "annotate/distance.hpp"
#include "common/error.hpp"

namespace mapsynth {

namespace {

// Segment along the principal axis of the points, clipped to the ring.
std::vector<Point> principal_axis_line(std::span<const Point> ring) {
  Ring rect = oriented_rectangle(ring, 0.0);
  // rect corners: the longer side pair defines the axis.
  const double l01 = distance(rect[0], rect[1]), l12 = distance(rect[1], rect[2]);
  Point a, b;
  if (l01 >= l12) {
    a = (rect[0] + rect[3]) * 0.5;
    b = (rect[1] + rect[2]) * 0.5;
  } else {
    a = (rect[0] + rect[1]) * 0.5;
    b = (rect[2] + rect[3]) * 0.5;
  }
  const bool by_x = std::abs(b.x - a.x) >= std::abs(b.y - a.y);
  if ((by_x && a.x > b.x) || (!by_x && a.y > b.y)) std::swap(a, b);
  return {a, b};
}

}  // namespace

std::vector<Pixel> extract_label_pixels(const TileImage& colored, std::uint32_t color_index,
                                        const ColorIndexMap& colors) {
  if (color_index == 0) throw Error(ErrorCode::Argument, "colour index 0 is reserved");
  const Rgb want = colors.color(color_index);
  std::vector<Pixel> out;
  for (int y = 0; y < colored.height(); ++y)
    for (int x = 0; x < colored.width(); ++x) {
      const Rgba p = colored.at(x, y);
      if (p.a == 255 && p.rgb() == want) out.push_back({x, y});
    }
  return out;
}

std::vector<std::uint32_t> label_indices(const TileImage& colored, const ColorIndexMap& colors) {
  std::set<std::uint32_t> found;
  for (int y = 0; y < colored.height(); ++y)
    for (int x = 0; x < colored.width(); ++x) {
      const Rgba p = colored.at(x, y);
      if (p.a != 255) continue;
      if (auto idx = colors.index_of(p.rgb())) found.insert(*idx);
    }
  return {found.begin(), found.end()};
}

std::vector<Pixel> rasterize_polygon(std::span<const Point> ring, int width, int height) {
  std::vector<Pixel> out;
  if (ring.size() < 3) return out;
  const Box b = bounding_box(ring);
  const int x0 = std::max(0, static_cast<int>(std::ceil(b.min_x - 1e-9)));
  const int y0 = std::max(0, static_cast<int>(std::ceil(b.min_y - 1e-9)));
  const int x1 = std::min(width - 1, static_cast<int>(std::floor(b.max_x + 1e-9)));
  const int y1 = std::min(height - 1, static_cast<int>(std::floor(b.max_y + 1e-9)));
  for (int y = y0; y <= y1; ++y)
    for (int x = x0; x <= x1; ++x)
      if (contains_inclusive(ring, {static_cast<double>(x), static_cast<double>(y)})) out.push_back({x, y});
  return out;
}

AnnotationRecord annotate_pixels(std::span<const Pixel> pixels, int width, int height, const AnnotateOptions& opts) {
  if (pixels.empty()) throw Error(ErrorCode::Argument, "annotate: label has no pixels");
  AnnotationRecord rec;
  HullResult hull = concave_hull(pixels, opts.alpha);
  rec.polygon = std::move(hull.polygon);
  rec.flags.multi_component = hull.multi_component;
  rec.flags.degenerate = hull.degenerate;

  std::vector<Pixel> filled = rasterize_polygon(rec.polygon, width, height);
  if (filled.empty()) filled.assign(pixels.begin(), pixels.end());
  rec.local_height = local_height(filled, width, height);

  bool fitted = false;
  if (!hull.degenerate) {
    const LineGraph skeleton = compute_raw_centerline(rec.polygon, opts.interpolation_distance);
    if (!skeleton.too_thin) {
      try {
        rec.centerline = fit_centerline(skeleton, rec.polygon, opts.arc_step);
        fitted = true;
      } catch (const Error&) {
      }
    }
  }
  if (!fitted) {
    const std::vector<Point> axis = principal_axis_line(rec.polygon);
    rec.centerline.points = axis;
    rec.centerline.axis = std::abs(axis[1].x - axis[0].x) >= std::abs(axis[1].y - axis[0].y) ? Axis::X : Axis::Y;
    rec.flags.degenerate = true;
  }
  rec.flags.self_intersecting = !is_simple(rec.polygon);
  return rec;
}

std::vector<AnnotationRecord> annotate_layer(const TileImage& colored, std::span<const LabelInfo> labels,
                                             const AnnotateOptions& opts, const ColorIndexMap& colors) {
  std::vector<AnnotationRecord> out;
  for (const LabelInfo& info : labels) {
    const std::vector<Pixel> px = extract_label_pixels(colored, info.color_index, colors);
    if (px.empty()) continue;
    AnnotationRecord rec = annotate_pixels(px, colored.width(), colored.height(), opts);
    rec.label_id = info.color_index;
    rec.transcription = info.transcription;
    rec.flags.overflow = info.overflow;
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace mapsynth
