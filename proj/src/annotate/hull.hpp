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
#include <span>
#include <vector>

#include "common/geometry.hpp"

namespace mapsynth {

/// Delaunay triangulation as the dual of the Voronoi diagram. Coordinates are
/// snapped to a 1/256 grid; duplicate points (after snapping) are merged and
/// `points` receives the deduplicated set the triangle indices refer to.
/// Every triangle is returned with positive shoelace orientation.
struct Triangulation {
  std::vector<Point> points;
  std::vector<std::array<int, 3>> triangles;
};

Triangulation delaunay(std::span<const Point> input);

double circumradius(Point a, Point b, Point c);

struct HullResult {
  Ring polygon;                  // clockwise (positive shoelace, y down)
  bool multi_component = false;  // more than one outer boundary survived
  bool degenerate = false;       // oriented-rectangle fallback was used
};

/// Alpha shape boundary. A Delaunay triangle is kept when its circumradius is
/// below 1/alpha; alpha <= 0 keeps all of them (the convex hull). The largest
/// outer boundary loop is returned with collinear vertices removed.
HullResult concave_hull(std::span<const Point> points, double alpha = 0.02);
HullResult concave_hull(std::span<const Pixel> pixels, double alpha = 0.02);

/// Principal-axis rectangle around the points, grown by `margin` on every
/// side. Used for collinear or tiny inputs.
Ring oriented_rectangle(std::span<const Point> points, double margin = 1.0);

}  // namespace mapsynth
