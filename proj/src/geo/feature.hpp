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

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "geo/projection.hpp"

namespace mapsynth {

struct PointGeometry {
  LonLat at;
};

struct PolylineSet {
  std::vector<std::vector<LonLat>> lines;  // each >= 2 points
};

struct PolygonSet {
  // polygon -> rings (outer first); rings are closed (front == back)
  std::vector<std::vector<std::vector<LonLat>>> polygons;
};

using Geometry = std::variant<PointGeometry, PolylineSet, PolygonSet>;

enum class GeometryKind { Point, PolylineSet, PolygonSet };

struct GeoFeature {
  std::int64_t id = 0;
  std::string name;
  std::string fclass;
  Geometry geometry;

  GeometryKind kind() const { return static_cast<GeometryKind>(geometry.index()); }
};

struct ParseReport {
  std::vector<GeoFeature> features;
  std::size_t skipped_empty_name = 0;
  /// Unsupported geometry types, out-of-range coordinates, malformed parts.
  std::size_t skipped_unsupported = 0;
  std::vector<std::string> warnings;
};

/// Parses a GeoJSON-like FeatureCollection. Each feature needs `name` and
/// `fclass` string properties; the id comes from the feature `id`, then
/// `properties.osm_id`, then the feature's position in the collection.
/// Accepted geometries: Point, LineString, MultiLineString, Polygon,
/// MultiPolygon. Throws ParseError (with byte offset) on malformed JSON.
ParseReport parse_features(std::string_view data);

}  // namespace mapsynth
