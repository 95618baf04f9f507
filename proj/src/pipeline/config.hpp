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
#include <optional>
#include <string>
#include <string_view>

#include "raster/image.hpp"

namespace mapsynth {

inline constexpr const char* kCacheDirEnv = "MAPSYNTH_CACHE_DIR";

/// Every knob of a run. Paths are kept as given.
struct RunConfig {
  std::optional<std::uint64_t> seed;
  int scene_px = 512;
  int zoom = 16;
  std::string tile_template;  // http(s) URL with {z}/{x}/{y}
  std::string tile_dir;       // local <dir>/<z>/<x>/<y>.png
  std::string cache_dir;      // defaults to $MAPSYNTH_CACHE_DIR, then "tile_cache"
  std::string vector_input;
  std::string font_config;  // 16 font paths; empty selects the built-in stroke font
  std::string style_table;  // optional fclass=group overrides
  double alpha = 0.02;
  double interpolation_distance = 9.0;
  double arc_step = 4.0;
  double noise_sigma = 0.0;
  double px_per_pt = 0.5;
  double letter_spacing = 1.0;
  Rgb ink{0, 0, 0};
  bool antialias = false;
  bool keep_layers = false;  // also write layers/<id>.png and layers/<id>.tsv
  int max_scenes = 0;        // 0 = every scene covering the data
  std::string output_dir;
  double t_r = 0.5;
  double t_p = 0.5;
  double k = 1.0;
  int jobs = 1;
};

/// Serialises every field (seed as null when unset).
std::string config_to_json(const RunConfig& cfg, int indent = 2);

/// Overlays the keys present in `json` onto `cfg`. Unknown keys and type
/// mismatches throw Error(Argument); malformed JSON throws ParseError.
void apply_config_json(RunConfig& cfg, std::string_view json);

/// Range checks common to every command.
void validate(const RunConfig& cfg);

/// cache_dir, else $MAPSYNTH_CACHE_DIR, else "tile_cache".
std::string effective_cache_dir(const RunConfig& cfg);

std::string format_rgb(Rgb c);
Rgb parse_rgb(std::string_view text);  // "#rrggbb" or "r,g,b"

}  // namespace mapsynth
