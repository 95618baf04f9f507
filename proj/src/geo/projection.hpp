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

#include "common/geometry.hpp"

namespace mapsynth {

struct LonLat {
  double lon = 0.0;
  double lat = 0.0;
  friend bool operator==(const LonLat&, const LonLat&) = default;
};

/// Web-Mercator latitude bound used for validation.
inline constexpr double kMaxMercatorLat = 85.06;

/// Slippy-map tile address (z/x/y).
struct TileAddress {
  int zoom = 0;
  int x = 0;
  int y = 0;
  int tile_px = 256;

  friend bool operator==(const TileAddress&, const TileAddress&) = default;
};

/// Throws Error(Argument) if zoom < 0, zoom > 30, tile_px <= 0 or x/y outside
/// [0, 2^zoom).
void validate(const TileAddress& tile);

bool is_valid_lonlat(LonLat p);

/// Fractional pixel coordinate of `p` relative to the top-left corner of
/// `tile`. Points outside the tile fall outside [0, tile_px).
/// Throws Error(Domain) when the latitude is outside the Mercator range.
Point project_to_pixel(LonLat p, const TileAddress& tile);

/// Inverse of project_to_pixel.
LonLat pixel_to_lonlat(Point px, const TileAddress& tile);

/// Tile containing `p` at `zoom`.
TileAddress tile_for(LonLat p, int zoom, int tile_px = 256);

}  // namespace mapsynth
