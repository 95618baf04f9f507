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

#include "common/geometry.hpp"

#include <algorithm>
#include <limits>

namespace mapsynth {

double shoelace_sum(std::span<const Point> ring) {
  const std::size_t n = ring.size();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = ring[i];
    const Point& b = ring[(i + 1) % n];
    s += a.x * b.y - b.x * a.y;
  }
  return s;
}

double polygon_area(std::span<const Point> ring) { return std::abs(shoelace_sum(ring)) * 0.5; }

bool is_clockwise(std::span<const Point> ring) { return shoelace_sum(ring) > 0.0; }

void make_clockwise(Ring& ring) {
  if (shoelace_sum(ring) < 0.0) std::reverse(ring.begin(), ring.end());
}

Box bounding_box(std::span<const Point> pts) {
  Box b{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
        -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const Point& p : pts) {
    b.min_x = std::min(b.min_x, p.x);
    b.min_y = std::min(b.min_y, p.y);
    b.max_x = std::max(b.max_x, p.x);
    b.max_y = std::max(b.max_y, p.y);
  }
  return b;
}

Point centroid(std::span<const Point> ring) {
  const std::size_t n = ring.size();
  double a = 0.0, cx = 0.0, cy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point& p = ring[i];
    const Point& q = ring[(i + 1) % n];
    const double w = p.x * q.y - q.x * p.y;
    a += w;
    cx += (p.x + q.x) * w;
    cy += (p.y + q.y) * w;
  }
  if (std::abs(a) < 1e-12) {
    Point m{};
    for (const Point& p : ring) m = m + p;
    return n ? m * (1.0 / static_cast<double>(n)) : m;
  }
  return {cx / (3.0 * a), cy / (3.0 * a)};
}

double distance_to_segment(Point p, Point a, Point b) {
  const Point ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return distance(p, a);
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return distance(p, a + ab * t);
}

double distance_to_boundary(Point p, std::span<const Point> ring) {
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i)
    best = std::min(best, distance_to_segment(p, ring[i], ring[(i + 1) % n]));
  return best;
}

Containment locate(Point p, std::span<const Point> ring, double eps) {
  const std::size_t n = ring.size();
  if (n == 0) return Containment::Outside;
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point& a = ring[i];
    const Point& b = ring[j];
    if (distance_to_segment(p, a, b) <= eps) return Containment::Boundary;
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x) inside = !inside;
    }
  }
  return inside ? Containment::Inside : Containment::Outside;
}

namespace {

int sign(double v) { return (v > 0.0) - (v < 0.0); }

bool on_segment(Point a, Point b, Point p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

}  // namespace

bool segments_intersect(Point a, Point b, Point c, Point d) {
  const int o1 = sign(orient(a, b, c));
  const int o2 = sign(orient(a, b, d));
  const int o3 = sign(orient(c, d, a));
  const int o4 = sign(orient(c, d, b));
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

bool segments_cross_properly(Point a, Point b, Point c, Point d) {
  const int o1 = sign(orient(a, b, c));
  const int o2 = sign(orient(a, b, d));
  const int o3 = sign(orient(c, d, a));
  const int o4 = sign(orient(c, d, b));
  return o1 * o2 < 0 && o3 * o4 < 0;
}

bool is_simple(std::span<const Point> ring) {
  const std::size_t n = ring.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = ring[i], b = ring[(i + 1) % n];
    if (a == b) return false;
    for (std::size_t j = i + 1; j < n; ++j) {
      const Point c = ring[j], d = ring[(j + 1) % n];
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (adjacent) {
        // Adjacent edges share one vertex; they must not fold back onto each other.
        const Point shared = (j == i + 1) ? b : a;
        const Point u = (j == i + 1) ? a : b;
        const Point v = (j == i + 1) ? d : c;
        if (orient(u, shared, v) == 0.0 && dot(u - shared, v - shared) > 0.0) return false;
        continue;
      }
      if (segments_intersect(a, b, c, d)) return false;
    }
  }
  return true;
}

Ring remove_collinear(Ring ring, double eps) {
  // Drop one vertex at a time so every test sees its current neighbours.
  auto redundant = [&](std::size_t i) {
    const std::size_t n = ring.size();
    const Point& prev = ring[(i + n - 1) % n];
    const Point& cur = ring[i];
    const Point& next = ring[(i + 1) % n];
    if (cur == prev) return true;
    return std::abs(orient(prev, cur, next)) <= eps && dot(cur - prev, next - cur) >= 0.0;
  };
  std::size_t i = 0, since_removal = 0;
  while (ring.size() >= 3 && since_removal < ring.size()) {
    if (i >= ring.size()) i = 0;
    if (redundant(i)) {
      ring.erase(ring.begin() + static_cast<std::ptrdiff_t>(i));
      since_removal = 0;
      if (i > 0) --i;
    } else {
      ++i;
      ++since_removal;
    }
  }
  return ring;
}

}  // namespace mapsynth
