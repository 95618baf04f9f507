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
#include <string>
#include <vector>

#include "geo/feature.hpp"
#include "geo/projection.hpp"
#include "raster/image.hpp"

namespace mapsynth {

/// A 512 px scene made of the tiles (x0..x0+1, y0..y0+1) at one zoom.
struct SceneId {
  int zoom = 0;
  int x0 = 0;
  int y0 = 0;

  std::string str() const;  // "z_x0_y0"
  TileAddress origin() const { return {zoom, x0, y0, 256}; }
  std::array<TileAddress, 4> tiles() const;
  friend bool operator==(const SceneId&, const SceneId&) = default;
};

SceneId parse_scene_id(const std::string& s);

/// 2x2 blocks covering the bounding box of all feature coordinates, aligned
/// to the block containing the north-west corner, row-major, at most
/// `max_scenes` (0 = no limit).
std::vector<SceneId> scenes_covering(std::span<const GeoFeature> features, int zoom, int max_scenes = 0);

/// Where background tiles come from.
struct TileSource {
  std::string local_dir;     // preferred when set
  std::string url_template;  // otherwise fetched through the cache
  std::string cache_dir;
};

TileImage load_tile(const TileSource& src, const TileAddress& tile);

/// The 512x512 background of a scene.
TileImage load_scene_background(const TileSource& src, const SceneId& scene);

}  // namespace mapsynth
