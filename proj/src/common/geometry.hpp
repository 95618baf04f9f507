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

#include <cmath>
#include <span>
#include <vector>

namespace mapsynth {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(Point a, double s) { return {a.x * s, a.y * s}; }
};

/// Integer pixel coordinate (column, row).
struct Pixel {
  int x = 0;
  int y = 0;

  friend bool operator==(const Pixel&, const Pixel&) = default;
  friend auto operator<=>(const Pixel& a, const Pixel& b) {
    if (auto c = a.y <=> b.y; c != 0) return c;
    return a.x <=> b.x;
  }
};

/// Open ring: the closing edge from back() to front() is implicit.
using Ring = std::vector<Point>;

struct Box {
  double min_x = 0, min_y = 0, max_x = 0, max_y = 0;

  double width() const { return max_x - min_x; }
  double height() const { return max_y - min_y; }
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(a - b); }

/// Orientation of c relative to the directed line a->b (sign of the cross
/// product).
inline double orient(Point a, Point b, Point c) { return cross(b - a, c - a); }

/// Sum over edges of x_i*y_{i+1} - x_{i+1}*y_i. Positive means clockwise when
/// drawn in y-down image coordinates.
double shoelace_sum(std::span<const Point> ring);
double polygon_area(std::span<const Point> ring);
bool is_clockwise(std::span<const Point> ring);
void make_clockwise(Ring& ring);

Box bounding_box(std::span<const Point> pts);
Point centroid(std::span<const Point> ring);

enum class Containment { Outside, Boundary, Inside };

/// Even-odd point-in-polygon test; points within `eps` of an edge report
/// Boundary.
Containment locate(Point p, std::span<const Point> ring, double eps = 1e-9);

inline bool contains_inclusive(std::span<const Point> ring, Point p, double eps = 1e-9) {
  return locate(p, ring, eps) != Containment::Outside;
}

double distance_to_segment(Point p, Point a, Point b);
double distance_to_boundary(Point p, std::span<const Point> ring);

/// Closed-segment intersection (touching counts).
bool segments_intersect(Point a, Point b, Point c, Point d);
/// True when the segments cross at a single interior point of both.
bool segments_cross_properly(Point a, Point b, Point c, Point d);

/// No two non-adjacent edges touch and no adjacent edges overlap.
bool is_simple(std::span<const Point> ring);

/// Drops repeated vertices and vertices whose neighbours are collinear with
/// them (within `eps` of cross product magnitude).
Ring remove_collinear(Ring ring, double eps = 1e-9);

}  // namespace mapsynth
