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

#include "pipeline/scenes.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>

#include "common/error.hpp"
#include "geo/tile_fetch.hpp"
#include "raster/png_io.hpp"
#include "raster/render.hpp"

namespace mapsynth {

std::string SceneId::str() const {
  return std::to_string(zoom) + "_" + std::to_string(x0) + "_" + std::to_string(y0);
}

std::array<TileAddress, 4> SceneId::tiles() const {
  return {TileAddress{zoom, x0, y0, 256}, TileAddress{zoom, x0 + 1, y0, 256}, TileAddress{zoom, x0, y0 + 1, 256},
          TileAddress{zoom, x0 + 1, y0 + 1, 256}};
}

SceneId parse_scene_id(const std::string& s) {
  SceneId id;
  int consumed = 0;
  if (std::sscanf(s.c_str(), "%d_%d_%d%n", &id.zoom, &id.x0, &id.y0, &consumed) != 3 ||
      consumed != static_cast<int>(s.size()))
    throw Error(ErrorCode::Argument, "bad scene id '" + s + "', expected z_x_y");
  for (const TileAddress& t : id.tiles()) validate(t);
  return id;
}

std::vector<SceneId> scenes_covering(std::span<const GeoFeature> features, int zoom, int max_scenes) {
  double min_lon = 1e9, max_lon = -1e9, min_lat = 1e9, max_lat = -1e9;
  auto add = [&](const LonLat& p) {
    min_lon = std::min(min_lon, p.lon);
    max_lon = std::max(max_lon, p.lon);
    min_lat = std::min(min_lat, p.lat);
    max_lat = std::max(max_lat, p.lat);
  };
  for (const GeoFeature& f : features)
    std::visit(
        [&](const auto& g) {
          using T = std::decay_t<decltype(g)>;
          if constexpr (std::is_same_v<T, PointGeometry>) {
            add(g.at);
          } else if constexpr (std::is_same_v<T, PolylineSet>) {
            for (const auto& line : g.lines)
              for (const LonLat& p : line) add(p);
          } else {
            for (const auto& poly : g.polygons)
              for (const auto& ring : poly)
                for (const LonLat& p : ring) add(p);
          }
        },
        f.geometry);
  std::vector<SceneId> out;
  if (min_lon > max_lon) return out;

  const TileAddress nw = tile_for({min_lon, max_lat}, zoom);
  const TileAddress se = tile_for({max_lon, min_lat}, zoom);
  const int n = 1 << zoom;
  const int x_start = std::min(nw.x, n - 2), y_start = std::min(nw.y, n - 2);
  for (int y = y_start; y <= se.y; y += 2)
    for (int x = x_start; x <= se.x; x += 2) {
      if (x + 1 >= n || y + 1 >= n) continue;
      out.push_back({zoom, x, y});
      if (max_scenes > 0 && static_cast<int>(out.size()) >= max_scenes) return out;
    }
  return out;
}

TileImage load_tile(const TileSource& src, const TileAddress& tile) {
  validate(tile);
  TileImage img;
  if (!src.local_dir.empty()) {
    const auto path = tile_cache_path(src.local_dir, tile);
    if (!std::filesystem::exists(path)) throw Error(ErrorCode::Io, "missing tile " + path.string());
    img = read_png(path);
  } else if (!src.url_template.empty()) {
    img = fetch_tile(src.url_template, tile, src.cache_dir);
  } else {
    throw Error(ErrorCode::Argument, "no tile source configured (tile_dir or tile_template)");
  }
  if (img.width() != tile.tile_px || img.height() != tile.tile_px)
    throw Error(ErrorCode::Format, "tile " + std::to_string(tile.zoom) + "/" + std::to_string(tile.x) + "/" +
                                       std::to_string(tile.y) + " is not " + std::to_string(tile.tile_px) + " px");
  img.address = tile;
  return img;
}

TileImage load_scene_background(const TileSource& src, const SceneId& scene) {
  const auto addr = scene.tiles();
  std::array<TileImage, 4> tiles;
  for (int i = 0; i < 4; ++i) tiles[i] = load_tile(src, addr[i]);
  return concat_tiles(tiles);
}

}  // namespace mapsynth
