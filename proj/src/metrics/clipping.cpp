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

#include "metrics/clipping.hpp"

#include <algorithm>
#include <cmath>

#include <boost/geometry.hpp>
#include <boost/geometry/geometries/point_xy.hpp>
#include <boost/geometry/geometries/polygon.hpp>

namespace mapsynth {

namespace {

namespace bg = boost::geometry;
using BPoint = bg::model::d2::point_xy<double>;
using BPolygon = bg::model::polygon<BPoint, false, false>;
using BMultiPolygon = bg::model::multi_polygon<BPolygon>;

BPolygon to_boost(std::span<const Point> ring) {
  BPolygon poly;
  for (Point p : ring) poly.outer().push_back(BPoint(p.x, p.y));
  bg::correct(poly);
  return poly;
}

double sampled_area(const Box& box, int samples, auto&& inside) {
  const double w = box.width(), h = box.height();
  if (!(w > 0) || !(h > 0)) return 0.0;
  const double step = std::max(w, h) / samples;
  const int nx = static_cast<int>(std::ceil(w / step)), ny = static_cast<int>(std::ceil(h / step));
  long count = 0;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const Point p{box.min_x + (i + 0.5) * step, box.min_y + (j + 0.5) * step};
      if (p.x <= box.max_x && p.y <= box.max_y && inside(p)) ++count;
    }
  return static_cast<double>(count) * step * step;
}

}  // namespace

bool clippable(std::span<const Point> ring) {
  if (ring.size() < 3 || !is_simple(ring)) return false;
  return bg::is_valid(to_boost(ring));
}

double intersection_area(std::span<const Point> a, std::span<const Point> b) {
  BMultiPolygon out;
  bg::intersection(to_boost(a), to_boost(b), out);
  return bg::area(out);
}

bool even_odd_contains(std::span<const Point> ring, Point p) {
  bool inside = false;
  for (std::size_t i = 0, j = ring.size() - 1; i < ring.size(); j = i++) {
    const Point a = ring[i], b = ring[j];
    if ((a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x) inside = !inside;
  }
  return inside;
}

double even_odd_area(std::span<const Point> ring, int samples) {
  return sampled_area(bounding_box(ring), samples, [&](Point p) { return even_odd_contains(ring, p); });
}

double even_odd_intersection_area(std::span<const Point> a, std::span<const Point> b, int samples) {
  const Box ba = bounding_box(a), bb = bounding_box(b);
  const Box box{std::max(ba.min_x, bb.min_x), std::max(ba.min_y, bb.min_y), std::min(ba.max_x, bb.max_x),
                std::min(ba.max_y, bb.max_y)};
  return sampled_area(box, samples, [&](Point p) { return even_odd_contains(a, p) && even_odd_contains(b, p); });
}

}  // namespace mapsynth
