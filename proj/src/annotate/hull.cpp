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

#include "annotate/hull.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <unordered_map>
#include <utility>

#include <boost/polygon/voronoi.hpp>

#include "common/error.hpp"

namespace mapsynth {

namespace {

constexpr double kSnap = 256.0;

using IPoint = boost::polygon::point_data<int>;

std::int64_t edge_key(int a, int b) { return (static_cast<std::int64_t>(a) << 32) | static_cast<std::uint32_t>(b); }

}  // namespace

Triangulation delaunay(std::span<const Point> input) {
  std::vector<IPoint> snapped;
  snapped.reserve(input.size());
  for (Point p : input) {
    const double sx = std::round(p.x * kSnap), sy = std::round(p.y * kSnap);
    if (std::abs(sx) > 1e9 || std::abs(sy) > 1e9) throw Error(ErrorCode::Domain, "delaunay: coordinate out of range");
    snapped.emplace_back(static_cast<int>(sx), static_cast<int>(sy));
  }
  std::sort(snapped.begin(), snapped.end(), [](const IPoint& a, const IPoint& b) {
    return a.y() != b.y() ? a.y() < b.y() : a.x() < b.x();
  });
  snapped.erase(std::unique(snapped.begin(), snapped.end()), snapped.end());

  Triangulation out;
  out.points.reserve(snapped.size());
  for (const IPoint& p : snapped) out.points.push_back({p.x() / kSnap, p.y() / kSnap});
  if (snapped.size() < 3) return out;

  boost::polygon::voronoi_diagram<double> vd;
  boost::polygon::construct_voronoi(snapped.begin(), snapped.end(), &vd);

  std::vector<int> ring;
  for (const auto& vertex : vd.vertices()) {
    // Sites around a Voronoi vertex are cocircular; fan them into triangles.
    ring.clear();
    const auto* start = vertex.incident_edge();
    const auto* e = start;
    do {
      ring.push_back(static_cast<int>(e->cell()->source_index()));
      e = e->rot_next();
    } while (e != start);
    for (std::size_t k = 1; k + 1 < ring.size(); ++k) {
      std::array<int, 3> t{ring[0], ring[k], ring[k + 1]};
      const double o = orient(out.points[t[0]], out.points[t[1]], out.points[t[2]]);
      if (o == 0) continue;
      if (o < 0) std::swap(t[1], t[2]);
      out.triangles.push_back(t);
    }
  }
  return out;
}

double circumradius(Point a, Point b, Point c) {
  const double area2 = std::abs(orient(a, b, c));
  if (area2 == 0) return std::numeric_limits<double>::infinity();
  return distance(a, b) * distance(b, c) * distance(c, a) / (2.0 * area2);
}

Ring oriented_rectangle(std::span<const Point> points, double margin) {
  if (points.empty()) throw Error(ErrorCode::Argument, "oriented_rectangle: no points");
  Point mean{0, 0};
  for (Point p : points) mean = mean + p;
  mean = mean * (1.0 / static_cast<double>(points.size()));
  double sxx = 0, syy = 0, sxy = 0;
  for (Point p : points) {
    const Point d = p - mean;
    sxx += d.x * d.x;
    syy += d.y * d.y;
    sxy += d.x * d.y;
  }
  const double theta = 0.5 * std::atan2(2.0 * sxy, sxx - syy);
  const Point u{std::cos(theta), std::sin(theta)};
  const Point v{-u.y, u.x};
  double u0 = 1e300, u1 = -1e300, v0 = 1e300, v1 = -1e300;
  for (Point p : points) {
    const Point d = p - mean;
    u0 = std::min(u0, dot(d, u));
    u1 = std::max(u1, dot(d, u));
    v0 = std::min(v0, dot(d, v));
    v1 = std::max(v1, dot(d, v));
  }
  u0 -= margin;
  u1 += margin;
  v0 -= margin;
  v1 += margin;
  Ring r{mean + u * u0 + v * v0, mean + u * u1 + v * v0, mean + u * u1 + v * v1, mean + u * u0 + v * v1};
  make_clockwise(r);
  return r;
}

HullResult concave_hull(std::span<const Point> points, double alpha) {
  HullResult result;
  const Triangulation tri = delaunay(points);
  const double max_radius = alpha > 0 ? 1.0 / alpha : std::numeric_limits<double>::infinity();

  std::unordered_map<std::int64_t, int> directed;  // edge -> multiplicity
  std::vector<std::pair<int, int>> edges;
  for (const auto& t : tri.triangles) {
    if (alpha > 0 && !(circumradius(tri.points[t[0]], tri.points[t[1]], tri.points[t[2]]) < max_radius)) continue;
    for (int k = 0; k < 3; ++k) {
      const int a = t[k], b = t[(k + 1) % 3];
      directed[edge_key(a, b)]++;
      edges.emplace_back(a, b);
    }
  }

  // Boundary edges have no reverse twin. Index them by start vertex.
  std::vector<std::pair<int, int>> boundary;
  for (auto [a, b] : edges)
    if (!directed.count(edge_key(b, a))) boundary.emplace_back(a, b);
  if (boundary.empty()) {
    result.polygon = oriented_rectangle(tri.points.empty() ? points : std::span<const Point>(tri.points));
    result.degenerate = true;
    return result;
  }
  std::multimap<int, int> outgoing;  // start vertex -> boundary edge index
  for (std::size_t i = 0; i < boundary.size(); ++i) outgoing.emplace(boundary[i].first, static_cast<int>(i));

  auto successor = [&](int edge) {
    const auto [u, v] = boundary[edge];
    const Point back = tri.points[u] - tri.points[v];
    const double back_angle = std::atan2(back.y, back.x);
    int best = -1;
    double best_turn = 1e300;
    auto [lo, hi] = outgoing.equal_range(v);
    for (auto it = lo; it != hi; ++it) {
      const Point d = tri.points[boundary[it->second].second] - tri.points[v];
      double turn = back_angle - std::atan2(d.y, d.x);  // clockwise sweep from the back direction
      while (turn <= 0) turn += 2 * M_PI;
      while (turn > 2 * M_PI) turn -= 2 * M_PI;
      if (turn < best_turn) {
        best_turn = turn;
        best = it->second;
      }
    }
    return best;
  };

  std::vector<bool> used(boundary.size(), false);
  Ring best_loop;
  double best_area = 0;
  int positive_loops = 0;
  for (std::size_t start = 0; start < boundary.size(); ++start) {
    if (used[start]) continue;
    Ring loop;
    int e = static_cast<int>(start);
    while (e >= 0 && !used[e]) {
      used[e] = true;
      loop.push_back(tri.points[boundary[e].first]);
      e = successor(e);
    }
    const double s = shoelace_sum(loop);
    if (s <= 0) continue;  // hole
    ++positive_loops;
    if (s > best_area) {
      best_area = s;
      best_loop = std::move(loop);
    }
  }

  best_loop = remove_collinear(std::move(best_loop));
  if (best_loop.size() < 3 || best_area <= 0) {
    result.polygon = oriented_rectangle(tri.points);
    result.degenerate = true;
    return result;
  }
  result.polygon = std::move(best_loop);
  result.multi_component = positive_loops > 1;
  return result;
}

HullResult concave_hull(std::span<const Pixel> pixels, double alpha) {
  std::vector<Point> pts;
  pts.reserve(pixels.size());
  for (Pixel p : pixels) pts.push_back({static_cast<double>(p.x), static_cast<double>(p.y)});
  return concave_hull(std::span<const Point>(pts), alpha);
}

}  // namespace mapsynth
