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

#include "annotate/centerline.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

#include <Eigen/Dense>
#include <boost/polygon/voronoi.hpp>

#include "common/error.hpp"

namespace mapsynth {

namespace {

constexpr double kSnap = 256.0;

bool crosses_boundary(Point a, Point b, std::span<const Point> ring) {
  for (std::size_t i = 0; i < ring.size(); ++i)
    if (segments_cross_properly(a, b, ring[i], ring[(i + 1) % ring.size()])) return true;
  return false;
}

double arclength(std::span<const Point> line) {
  double len = 0;
  for (std::size_t i = 1; i < line.size(); ++i) len += distance(line[i - 1], line[i]);
  return len;
}

Point unit(Point d) {
  const double n = norm(d);
  return n > 0 ? d * (1.0 / n) : Point{1, 0};
}

}  // namespace

std::vector<Point> densify_ring(std::span<const Point> ring, double interpolation_distance) {
  if (!(interpolation_distance > 0)) throw Error(ErrorCode::Argument, "interpolation distance must be positive");
  std::vector<Point> out;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const Point a = ring[i], b = ring[(i + 1) % ring.size()];
    const int parts = std::max(1, static_cast<int>(std::ceil(distance(a, b) / interpolation_distance - 1e-9)));
    for (int k = 0; k < parts; ++k) out.push_back(a + (b - a) * (static_cast<double>(k) / parts));
  }
  return out;
}

LineGraph compute_raw_centerline(std::span<const Point> polygon, double interpolation_distance) {
  if (polygon.size() < 3) throw Error(ErrorCode::Argument, "compute_raw_centerline: polygon needs 3 vertices");
  LineGraph graph;
  const std::vector<Point> samples = densify_ring(polygon, interpolation_distance);

  std::vector<boost::polygon::point_data<int>> sites;
  sites.reserve(samples.size());
  for (Point p : samples)
    sites.emplace_back(static_cast<int>(std::lround(p.x * kSnap)), static_cast<int>(std::lround(p.y * kSnap)));
  std::sort(sites.begin(), sites.end(), [](const auto& a, const auto& b) {
    return a.y() != b.y() ? a.y() < b.y() : a.x() < b.x();
  });
  sites.erase(std::unique(sites.begin(), sites.end()), sites.end());

  boost::polygon::voronoi_diagram<double> vd;
  boost::polygon::construct_voronoi(sites.begin(), sites.end(), &vd);

  std::unordered_map<const void*, int> index;
  double max_clearance = 0;
  for (const auto& v : vd.vertices()) {
    const Point p{v.x() / kSnap, v.y() / kSnap};
    if (locate(p, polygon) != Containment::Inside) continue;
    index.emplace(&v, static_cast<int>(graph.vertices.size()));
    graph.vertices.push_back(p);
    max_clearance = std::max(max_clearance, distance_to_boundary(p, polygon));
  }
  std::set<std::pair<int, int>> seen;
  for (const auto& e : vd.edges()) {
    if (!e.is_primary() || !e.is_finite()) continue;
    auto ia = index.find(e.vertex0()), ib = index.find(e.vertex1());
    if (ia == index.end() || ib == index.end()) continue;
    const int a = std::min(ia->second, ib->second), b = std::max(ia->second, ib->second);
    if (a == b || !seen.insert({a, b}).second) continue;
    if (crosses_boundary(graph.vertices[a], graph.vertices[b], polygon)) continue;
    graph.edges.emplace_back(a, b);
  }
  if (graph.vertices.empty() || max_clearance < 1.0) {
    graph.vertices.clear();
    graph.edges.clear();
    graph.too_thin = true;
  }
  return graph;
}

double CenterlineFit::evaluate(double t) const {
  const double s = (t - center) / scale;
  double v = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * s + *it;
  return v;
}

Point CenterlineFit::point_at(double t) const {
  const double u = evaluate(t);
  return axis == Axis::X ? Point{t, u} : Point{u, t};
}

Axis choose_axis(std::span<const Point> pts) {
  const Box b = bounding_box(pts);
  return b.width() >= b.height() ? Axis::X : Axis::Y;
}

CenterlineFit fit_cubic(std::span<const Point> pts) {
  if (pts.empty()) throw Error(ErrorCode::Domain, "fit_cubic: no points");
  CenterlineFit fit;
  fit.axis = choose_axis(pts);
  const auto t_of = [&](Point p) { return fit.axis == Axis::X ? p.x : p.y; };
  const auto u_of = [&](Point p) { return fit.axis == Axis::X ? p.y : p.x; };

  std::set<double> distinct;
  fit.t_min = 1e300;
  fit.t_max = -1e300;
  for (Point p : pts) {
    distinct.insert(t_of(p));
    fit.t_min = std::min(fit.t_min, t_of(p));
    fit.t_max = std::max(fit.t_max, t_of(p));
  }
  const int degree = std::min<int>(3, static_cast<int>(distinct.size()) - 1);
  fit.reduced_degree = degree < 3;
  fit.center = 0.5 * (fit.t_min + fit.t_max);
  fit.scale = fit.t_max > fit.t_min ? 0.5 * (fit.t_max - fit.t_min) : 1.0;

  const Eigen::Index n = static_cast<Eigen::Index>(pts.size());
  Eigen::MatrixXd a(n, degree + 1);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double s = (t_of(pts[i]) - fit.center) / fit.scale;
    double pw = 1;
    for (int k = 0; k <= degree; ++k, pw *= s) a(i, k) = pw;
    rhs(i) = u_of(pts[i]);
  }
  const Eigen::VectorXd c = a.colPivHouseholderQr().solve(rhs);
  fit.coeffs.assign(c.data(), c.data() + c.size());
  return fit;
}

Centerline fit_centerline(std::span<const Point> pts, std::span<const Point> clip, double arc_step) {
  if (pts.empty()) throw Error(ErrorCode::Domain, "fit_centerline: empty skeleton");
  if (!(arc_step > 0)) throw Error(ErrorCode::Argument, "fit_centerline: arc step must be positive");
  const CenterlineFit fit = fit_cubic(pts);
  Centerline out;
  out.axis = fit.axis;
  out.reduced_degree = fit.reduced_degree;
  if (!(fit.t_max > fit.t_min)) throw Error(ErrorCode::Domain, "fit_centerline: skeleton has no extent");

  // Dense polyline of the curve, then equal arclength steps along it.
  const int dense = std::max(256, static_cast<int>(std::ceil((fit.t_max - fit.t_min) * 8)));
  std::vector<Point> curve(dense + 1);
  for (int i = 0; i <= dense; ++i)
    curve[i] = fit.point_at(i == dense ? fit.t_max : fit.t_min + (fit.t_max - fit.t_min) * i / dense);
  std::vector<double> cum(curve.size(), 0.0);
  for (std::size_t i = 1; i < curve.size(); ++i) cum[i] = cum[i - 1] + distance(curve[i - 1], curve[i]);
  const double total = cum.back();

  std::vector<Point> samples;
  std::size_t seg = 1;
  for (double s = 0; s < total - 0.25 * arc_step; s += arc_step) {
    while (seg + 1 < cum.size() && cum[seg] < s) ++seg;
    const double span = cum[seg] - cum[seg - 1];
    const double f = span > 0 ? (s - cum[seg - 1]) / span : 0.0;
    samples.push_back(curve[seg - 1] + (curve[seg] - curve[seg - 1]) * f);
  }
  samples.push_back(curve.back());

  if (clip.empty()) {
    out.points = std::move(samples);
  } else {
    std::size_t best_begin = 0, best_len = 0;
    for (std::size_t i = 0; i < samples.size();) {
      if (!contains_inclusive(clip, samples[i])) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < samples.size() && contains_inclusive(clip, samples[j])) ++j;
      if (j - i > best_len) {
        best_len = j - i;
        best_begin = i;
      }
      i = j;
    }
    out.points.assign(samples.begin() + static_cast<std::ptrdiff_t>(best_begin),
                      samples.begin() + static_cast<std::ptrdiff_t>(best_begin + best_len));
  }
  if (out.points.size() < 2) throw Error(ErrorCode::Domain, "fit_centerline: fewer than two samples inside");
  return out;
}

Centerline fit_centerline(const LineGraph& raw, std::span<const Point> clip, double arc_step) {
  return fit_centerline(std::span<const Point>(raw.vertices), clip, arc_step);
}

std::vector<Point> resample_by_arclength(std::span<const Point> line, int count) {
  if (line.size() < 2 || count < 2) return {line.begin(), line.end()};
  std::vector<double> cum(line.size(), 0.0);
  for (std::size_t i = 1; i < line.size(); ++i) cum[i] = cum[i - 1] + distance(line[i - 1], line[i]);
  const double total = cum.back();
  std::vector<Point> out;
  out.reserve(count);
  std::size_t seg = 1;
  for (int k = 0; k < count; ++k) {
    if (k == count - 1) {
      out.push_back(line.back());
      break;
    }
    const double s = total * k / (count - 1);
    while (seg + 1 < cum.size() && cum[seg] < s) ++seg;
    const double span = cum[seg] - cum[seg - 1];
    const double f = span > 0 ? (s - cum[seg - 1]) / span : 0.0;
    out.push_back(line[seg - 1] + (line[seg] - line[seg - 1]) * f);
  }
  return out;
}

ReconstructedPolygon reconstruct_polygon(std::span<const Point> centerline, double h) {
  if (centerline.size() < 2) throw Error(ErrorCode::Argument, "reconstruct_polygon: centerline needs 2 points");
  if (!(h > 0)) throw Error(ErrorCode::Argument, "reconstruct_polygon: local height must be positive");
  const double len = arclength(centerline);
  if (!(len > 0)) throw Error(ErrorCode::Argument, "reconstruct_polygon: zero-length centerline");

  const int target = std::clamp(static_cast<int>(std::lround(len / 10.0)) + 1, 10, 20);
  std::vector<Point> pts = resample_by_arclength(centerline, std::min<int>(target, static_cast<int>(centerline.size())));
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 2) throw Error(ErrorCode::Argument, "reconstruct_polygon: degenerate centerline");

  const Point head = unit(pts[1] - pts[0]);
  const Point tail = unit(pts[pts.size() - 1] - pts[pts.size() - 2]);
  pts.front() = pts.front() - head * h;
  pts.back() = pts.back() + tail * h;

  // Offsets at the extended ends and at every segment midpoint.
  std::vector<Point> centers, normals;
  auto add = [&](Point c, Point dir) {
    centers.push_back(c);
    normals.push_back({-dir.y, dir.x});
  };
  add(pts.front(), head);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) add((pts[i] + pts[i + 1]) * 0.5, unit(pts[i + 1] - pts[i]));
  add(pts.back(), tail);

  Ring ring;
  for (std::size_t i = 0; i < centers.size(); ++i) ring.push_back(centers[i] + normals[i] * h);
  for (std::size_t i = centers.size(); i-- > 0;) ring.push_back(centers[i] - normals[i] * h);
  ring = remove_collinear(std::move(ring));
  make_clockwise(ring);

  ReconstructedPolygon out;
  out.self_intersecting = !is_simple(ring);
  out.polygon = std::move(ring);
  return out;
}

}  // namespace mapsynth
