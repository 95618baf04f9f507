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

#include <filesystem>
#include <string>
#include <string_view>

#include "geo/projection.hpp"
#include "raster/image.hpp"

namespace mapsynth {

/// Replaces {z}, {x}, {y}. Throws Error(Argument) if any placeholder is
/// missing.
std::string expand_tile_template(std::string_view url_template, const TileAddress& tile);

/// `<cache_dir>/<z>/<x>/<y>.png`
std::filesystem::path tile_cache_path(const std::filesystem::path& cache_dir, const TileAddress& tile);

struct FetchStats {
  int cache_hits = 0;
  int network_fetches = 0;
};

/// Returns the cached tile when present; otherwise performs one HTTP GET,
/// persists the payload to the cache and returns the decoded RGBA raster.
///
/// Errors: NetworkError (transport failures are retriable; HTTP errors carry
/// the status and URL), Error(Format) for non-PNG payloads, Error(Io) when the
/// cache cannot be written. Safe to call concurrently; writes to the same
/// tile are serialised.
TileImage fetch_tile(std::string_view url_template, const TileAddress& tile, const std::filesystem::path& cache_dir,
                     FetchStats* stats = nullptr);

}  // namespace mapsynth
