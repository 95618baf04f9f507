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

#include <span>
#include <utility>
#include <vector>

#include "common/geometry.hpp"

namespace mapsynth {

/// Voronoi skeleton: vertices strictly inside the polygon and the finite
/// Voronoi edges joining them that stay inside.
struct LineGraph {
  std::vector<Point> vertices;
  std::vector<std::pair<int, int>> edges;
  bool too_thin = false;  // polygon narrower than 2 px everywhere; graph left empty
};

/// Splits every polygon edge into ceil(len / d) equal pieces.
std::vector<Point> densify_ring(std::span<const Point> ring, double interpolation_distance);

LineGraph compute_raw_centerline(std::span<const Point> polygon, double interpolation_distance = 9.0);

enum class Axis { X, Y };

/// Least-squares polynomial u = f(t) where t is the independent coordinate.
/// The polynomial is expressed in the normalized variable (t - center) / scale.
struct CenterlineFit {
  Axis axis = Axis::X;
  std::vector<double> coeffs;  // ascending powers
  double center = 0.0;
  double scale = 1.0;
  double t_min = 0.0;
  double t_max = 0.0;
  bool reduced_degree = false;  // fewer than 4 distinct abscissae

  double evaluate(double t) const;
  Point point_at(double t) const;
};

/// Axis rule: X extent >= Y extent fits y = f(x), otherwise x = f(y).
Axis choose_axis(std::span<const Point> pts);

CenterlineFit fit_cubic(std::span<const Point> pts);

struct Centerline {
  std::vector<Point> points;
  Axis axis = Axis::X;
  bool reduced_degree = false;
};

/// Fits the skeleton points and resamples the curve every `arc_step` pixels of
/// arclength between the extreme abscissae. With a clip polygon only the
/// longest run of samples inside (or on) it is kept. Throws Error(Domain) when
/// the graph is empty or fewer than two samples remain.
Centerline fit_centerline(const LineGraph& raw, std::span<const Point> clip = {}, double arc_step = 4.0);
Centerline fit_centerline(std::span<const Point> pts, std::span<const Point> clip = {}, double arc_step = 4.0);

struct ReconstructedPolygon {
  Ring polygon;
  bool self_intersecting = false;
};

/// Ribbon of half-width h around the centerline: downsampled to 10..20
/// points, ends extended by h, perpendicular offsets at each segment midpoint.
ReconstructedPolygon reconstruct_polygon(std::span<const Point> centerline, double h);

/// Picks `count` points evenly spaced in arclength, endpoints included.
std::vector<Point> resample_by_arclength(std::span<const Point> line, int count);

}  // namespace mapsynth
