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

#include "geo/projection.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "common/error.hpp"

namespace mapsynth {

void validate(const TileAddress& t) {
  if (t.zoom < 0 || t.zoom > 30) throw Error(ErrorCode::Argument, "zoom out of range: " + std::to_string(t.zoom));
  if (t.tile_px <= 0) throw Error(ErrorCode::Argument, "tile size must be positive");
  const long long n = 1LL << t.zoom;
  if (t.x < 0 || t.y < 0 || t.x >= n || t.y >= n)
    throw Error(ErrorCode::Argument, "tile " + std::to_string(t.zoom) + "/" + std::to_string(t.x) + "/" +
                                         std::to_string(t.y) + " outside the pyramid");
}

bool is_valid_lonlat(LonLat p) {
  return std::isfinite(p.lon) && std::isfinite(p.lat) && p.lon >= -180.0 && p.lon <= 180.0 &&
         p.lat > -kMaxMercatorLat && p.lat < kMaxMercatorLat;
}

namespace {

// World coordinates in [0,1) x [0,1).
Point to_world(LonLat p) {
  const double lat = p.lat * std::numbers::pi / 180.0;
  const double x = (p.lon + 180.0) / 360.0;
  const double y = (1.0 - std::asinh(std::tan(lat)) / std::numbers::pi) / 2.0;
  return {x, y};
}

}  // namespace

Point project_to_pixel(LonLat p, const TileAddress& tile) {
  if (!is_valid_lonlat(p))
    throw Error(ErrorCode::Domain, "coordinate outside Web-Mercator range: (" + std::to_string(p.lon) + ", " +
                                       std::to_string(p.lat) + ")");
  validate(tile);
  const double scale = std::ldexp(static_cast<double>(tile.tile_px), tile.zoom);
  const Point w = to_world(p);
  return {w.x * scale - static_cast<double>(tile.x) * tile.tile_px,
          w.y * scale - static_cast<double>(tile.y) * tile.tile_px};
}

LonLat pixel_to_lonlat(Point px, const TileAddress& tile) {
  validate(tile);
  const double scale = std::ldexp(static_cast<double>(tile.tile_px), tile.zoom);
  const double wx = (px.x + static_cast<double>(tile.x) * tile.tile_px) / scale;
  const double wy = (px.y + static_cast<double>(tile.y) * tile.tile_px) / scale;
  const double lon = wx * 360.0 - 180.0;
  const double lat = std::atan(std::sinh(std::numbers::pi * (1.0 - 2.0 * wy))) * 180.0 / std::numbers::pi;
  return {lon, lat};
}

TileAddress tile_for(LonLat p, int zoom, int tile_px) {
  const Point px = project_to_pixel(p, TileAddress{zoom, 0, 0, tile_px});
  const int n = 1 << zoom;
  TileAddress t{zoom, static_cast<int>(std::floor(px.x / tile_px)), static_cast<int>(std::floor(px.y / tile_px)),
                tile_px};
  t.x = std::min(std::max(t.x, 0), n - 1);
  t.y = std::min(std::max(t.y, 0), n - 1);
  return t;
}

}  // namespace mapsynth
