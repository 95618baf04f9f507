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

#include "geo/tile_fetch.hpp"

#include <httplib.h>

#include <map>
#include <memory>
#include <mutex>

#include "common/error.hpp"
#include "common/fs_util.hpp"
#include "raster/png_io.hpp"

namespace mapsynth {

namespace fs = std::filesystem;

std::string expand_tile_template(std::string_view url_template, const TileAddress& tile) {
  std::string s(url_template);
  for (const char* key : {"{z}", "{x}", "{y}"})
    if (s.find(key) == std::string::npos)
      throw Error(ErrorCode::Argument, std::string("tile template lacks ") + key + ": " + s);
  auto replace_all = [&s](std::string_view key, const std::string& value) {
    for (auto pos = s.find(key); pos != std::string::npos; pos = s.find(key, pos + value.size()))
      s.replace(pos, key.size(), value);
  };
  replace_all("{z}", std::to_string(tile.zoom));
  replace_all("{x}", std::to_string(tile.x));
  replace_all("{y}", std::to_string(tile.y));
  return s;
}

fs::path tile_cache_path(const fs::path& cache_dir, const TileAddress& tile) {
  return cache_dir / std::to_string(tile.zoom) / std::to_string(tile.x) / (std::to_string(tile.y) + ".png");
}

namespace {

std::mutex& lock_for(const fs::path& p) {
  static std::mutex registry_mutex;
  static std::map<std::string, std::unique_ptr<std::mutex>> registry;
  std::lock_guard guard(registry_mutex);
  auto& slot = registry[p.string()];
  if (!slot) slot = std::make_unique<std::mutex>();
  return *slot;
}

struct SplitUrl {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

SplitUrl split_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw Error(ErrorCode::Argument, "not an absolute URL: " + url);
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

std::string http_get(const std::string& url) {
  const SplitUrl parts = split_url(url);
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
  if (parts.origin.rfind("https://", 0) == 0)
    throw NetworkError("https is not supported by this build: " + url, url, 0, false);
#endif
  httplib::Client client(parts.origin);
  client.set_connection_timeout(10);
  client.set_read_timeout(30);
  client.set_follow_location(true);
  const httplib::Headers headers{{"User-Agent", "mapsynth/1.0"}};
  auto res = client.Get(parts.path, headers);
  if (!res) throw NetworkError("request failed (" + httplib::to_string(res.error()) + "): " + url, url, 0, true);
  if (res->status != 200) {
    const bool retriable = res->status == 429 || res->status >= 500;
    throw NetworkError("HTTP " + std::to_string(res->status) + " for " + url, url, res->status, retriable);
  }
  return std::move(res->body);
}

}  // namespace

TileImage fetch_tile(std::string_view url_template, const TileAddress& tile, const fs::path& cache_dir,
                     FetchStats* stats) {
  validate(tile);
  const std::string url = expand_tile_template(url_template, tile);
  const fs::path path = tile_cache_path(cache_dir, tile);

  std::lock_guard guard(lock_for(path));
  if (fs::exists(path)) {
    if (stats) ++stats->cache_hits;
    TileImage img = read_png(path);
    img.address = tile;
    return img;
  }
  if (stats) ++stats->network_fetches;
  std::string body = http_get(url);
  TileImage img;
  try {
    img = decode_png(body);
  } catch (const Error& e) {
    throw Error(ErrorCode::Format, "payload from " + url + " is not a PNG image");
  }
  write_file_atomic(path, body);
  img.address = tile;
  return img;
}

}  // namespace mapsynth
