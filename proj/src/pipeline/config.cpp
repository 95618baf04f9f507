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

#include "pipeline/config.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "common/error.hpp"

namespace mapsynth {

using nlohmann::ordered_json;

std::string format_rgb(Rgb c) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c.r, c.g, c.b);
  return buf;
}

Rgb parse_rgb(std::string_view text) {
  auto bad = [&] { return Error(ErrorCode::Argument, "bad colour '" + std::string(text) + "'"); };
  if (text.size() == 7 && text[0] == '#') {
    unsigned v = 0;
    for (char ch : text.substr(1)) {
      v <<= 4;
      if (ch >= '0' && ch <= '9') v |= unsigned(ch - '0');
      else if (ch >= 'a' && ch <= 'f') v |= unsigned(ch - 'a' + 10);
      else if (ch >= 'A' && ch <= 'F') v |= unsigned(ch - 'A' + 10);
      else throw bad();
    }
    return {std::uint8_t(v >> 16), std::uint8_t(v >> 8), std::uint8_t(v)};
  }
  std::stringstream ss{std::string(text)};
  int r, g, b;
  char c1, c2;
  if (!(ss >> r >> c1 >> g >> c2 >> b) || c1 != ',' || c2 != ',' || !ss.eof()) throw bad();
  if (r < 0 || r > 255 || g < 0 || g > 255 || b < 0 || b > 255) throw bad();
  return {std::uint8_t(r), std::uint8_t(g), std::uint8_t(b)};
}

std::string config_to_json(const RunConfig& c, int indent) {
  ordered_json j;
  j["seed"] = c.seed ? ordered_json(*c.seed) : ordered_json(nullptr);
  j["scene_px"] = c.scene_px;
  j["zoom"] = c.zoom;
  j["tile_template"] = c.tile_template;
  j["tile_dir"] = c.tile_dir;
  j["cache_dir"] = c.cache_dir;
  j["vector_input"] = c.vector_input;
  j["font_config"] = c.font_config;
  j["style_table"] = c.style_table;
  j["alpha"] = c.alpha;
  j["interpolation_distance"] = c.interpolation_distance;
  j["arc_step"] = c.arc_step;
  j["noise_sigma"] = c.noise_sigma;
  j["px_per_pt"] = c.px_per_pt;
  j["letter_spacing"] = c.letter_spacing;
  j["ink"] = format_rgb(c.ink);
  j["antialias"] = c.antialias;
  j["keep_layers"] = c.keep_layers;
  j["max_scenes"] = c.max_scenes;
  j["output_dir"] = c.output_dir;
  j["t_r"] = c.t_r;
  j["t_p"] = c.t_p;
  j["k"] = c.k;
  j["jobs"] = c.jobs;
  return j.dump(indent);
}

void apply_config_json(RunConfig& c, std::string_view text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("config: ") + e.what(), e.byte);
  }
  if (!j.is_object()) throw Error(ErrorCode::Argument, "config: top level must be an object");
  for (const auto& [key, v] : j.items()) {
    try {
      if (key == "seed") c.seed = v.is_null() ? std::nullopt : std::optional<std::uint64_t>(v.get<std::uint64_t>());
      else if (key == "scene_px") c.scene_px = v.get<int>();
      else if (key == "zoom") c.zoom = v.get<int>();
      else if (key == "tile_template") c.tile_template = v.get<std::string>();
      else if (key == "tile_dir") c.tile_dir = v.get<std::string>();
      else if (key == "cache_dir") c.cache_dir = v.get<std::string>();
      else if (key == "vector_input") c.vector_input = v.get<std::string>();
      else if (key == "font_config") c.font_config = v.get<std::string>();
      else if (key == "style_table") c.style_table = v.get<std::string>();
      else if (key == "alpha") c.alpha = v.get<double>();
      else if (key == "interpolation_distance") c.interpolation_distance = v.get<double>();
      else if (key == "arc_step") c.arc_step = v.get<double>();
      else if (key == "noise_sigma") c.noise_sigma = v.get<double>();
      else if (key == "px_per_pt") c.px_per_pt = v.get<double>();
      else if (key == "letter_spacing") c.letter_spacing = v.get<double>();
      else if (key == "ink") c.ink = parse_rgb(v.get<std::string>());
      else if (key == "antialias") c.antialias = v.get<bool>();
      else if (key == "keep_layers") c.keep_layers = v.get<bool>();
      else if (key == "max_scenes") c.max_scenes = v.get<int>();
      else if (key == "output_dir") c.output_dir = v.get<std::string>();
      else if (key == "t_r") c.t_r = v.get<double>();
      else if (key == "t_p") c.t_p = v.get<double>();
      else if (key == "k") c.k = v.get<double>();
      else if (key == "jobs") c.jobs = v.get<int>();
      else throw Error(ErrorCode::Argument, "config: unknown key '" + key + "'");
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::Argument, "config: bad value for '" + key + "': " + e.what());
    }
  }
}

void validate(const RunConfig& c) {
  auto require = [](bool ok, const char* msg) {
    if (!ok) throw Error(ErrorCode::Argument, msg);
  };
  require(c.scene_px == 512, "scene_px must be 512 (2x2 tiles of 256 px)");
  require(c.zoom >= 1 && c.zoom <= 22, "zoom must lie in [1, 22]");
  require(c.alpha >= 0, "alpha must be non-negative");
  require(c.interpolation_distance > 0, "interpolation_distance must be positive");
  require(c.arc_step > 0, "arc_step must be positive");
  require(c.noise_sigma >= 0, "noise_sigma must be non-negative");
  require(c.px_per_pt > 0, "px_per_pt must be positive");
  require(c.letter_spacing > 0, "letter_spacing must be positive");
  require(c.max_scenes >= 0, "max_scenes must be non-negative");
  require(c.t_r >= 0 && c.t_r <= 1 && c.t_p >= 0 && c.t_p <= 1, "t_r and t_p must lie in [0, 1]");
  require(c.k >= 0 && c.k <= 1, "k must lie in [0, 1]");
  require(c.jobs >= 1 && c.jobs <= 256, "jobs must lie in [1, 256]");
}

std::string effective_cache_dir(const RunConfig& c) {
  if (!c.cache_dir.empty()) return c.cache_dir;
  if (const char* env = std::getenv(kCacheDirEnv); env && *env) return env;
  return "tile_cache";
}

}  // namespace mapsynth
