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

#include "dataset/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include <json.hpp>

#include "common/error.hpp"
#include "common/fs_util.hpp"
#include "common/text.hpp"
#include "dataset/icdar.hpp"

namespace mapsynth {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr std::string_view kExtHeader = "mapsynth-gt 1";

ExtendedRegion to_extended(const AnnotationRecord& r, int width, int height) {
  ExtendedRegion out;
  for (Point p : clamp_to_image(r.polygon, width, height))
    out.polygon.push_back({double(round_coordinate(p.x)), double(round_coordinate(p.y))});
  out.centerline = r.centerline.points;
  out.local_height = r.local_height;
  out.transcription = r.transcription;
  out.flags = r.flags;
  return out;
}

std::string flags_text(const AnnotationFlags& f) {
  std::string out;
  auto add = [&](bool on, const char* name) {
    if (!on) return;
    if (!out.empty()) out += ' ';
    out += name;
  };
  add(f.multi_component, "multi_component");
  add(f.self_intersecting, "self_intersecting");
  add(f.overflow, "overflow");
  add(f.degenerate, "degenerate");
  return out.empty() ? "none" : out;
}

double parse_number(std::string_view s, std::size_t offset) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw ParseError("bad number '" + std::string(s) + "'", offset);
  return v;
}

std::vector<double> parse_numbers(std::string_view s, std::size_t offset) {
  std::vector<double> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && s[i] == ' ') ++i;
    if (i >= s.size()) break;
    std::size_t j = s.find(' ', i);
    if (j == std::string_view::npos) j = s.size();
    out.push_back(parse_number(s.substr(i, j - i), offset));
    i = j;
  }
  return out;
}

std::vector<Point> pairs(const std::vector<double>& v, std::size_t offset) {
  if (v.size() % 2) throw ParseError("odd number of coordinates", offset);
  std::vector<Point> out;
  for (std::size_t k = 0; k < v.size(); k += 2) out.push_back({v[k], v[k + 1]});
  return out;
}

int count_regions(const fs::path& file, bool extended) {
  const std::string text = read_file(file);
  if (extended) return static_cast<int>(parse_extended(text).size());
  const IcdarFile f = parse_icdar(text, file.filename().string());
  return static_cast<int>(f.regions.size() + f.errors.size());
}

}  // namespace

Ring clamp_to_image(std::span<const Point> ring, int width, int height) {
  Ring out;
  for (Point p : ring)
    out.push_back({std::clamp(p.x, 0.0, double(width - 1)), std::clamp(p.y, 0.0, double(height - 1))});
  return out;
}

std::string format_icdar_gt(const SceneRecord& scene) {
  std::string out;
  for (const AnnotationRecord& r : scene.annotations) {
    out += format_icdar_line(clamp_to_image(r.polygon, scene.width, scene.height), r.transcription);
    out += '\n';
  }
  return out;
}

void export_icdar_gt(const SceneRecord& scene, const fs::path& out) { write_file_atomic(out, format_icdar_gt(scene)); }

std::string format_extended(std::span<const ExtendedRegion> regions) {
  std::string out(kExtHeader);
  out += "\nregions: " + std::to_string(regions.size()) + "\n";
  for (const ExtendedRegion& r : regions) {
    out += "\nregion\npolygon:";
    for (Point p : r.polygon) out += " " + std::to_string(round_coordinate(p.x)) + " " + std::to_string(round_coordinate(p.y));
    out += "\ncenterline:";
    for (Point p : r.centerline) out += " " + format_fixed(p.x, 2) + " " + format_fixed(p.y, 2);
    out += "\nlocal_height: " + format_fixed(r.local_height, 2);
    out += "\ntranscription: " + nlohmann::json(r.transcription).dump();
    out += "\nflags: " + flags_text(r.flags);
    out += "\nend\n";
  }
  return out;
}

std::string format_extended(const SceneRecord& scene) {
  std::vector<ExtendedRegion> regions;
  for (const AnnotationRecord& r : scene.annotations) regions.push_back(to_extended(r, scene.width, scene.height));
  return format_extended(regions);
}

void export_extended(const SceneRecord& scene, const fs::path& out) { write_file_atomic(out, format_extended(scene)); }

std::vector<ExtendedRegion> parse_extended(std::string_view text) {
  std::vector<ExtendedRegion> out;
  std::size_t pos = 0;
  int declared = -1;
  bool in_region = false;
  unsigned seen = 0;  // bit per field inside the current region
  ExtendedRegion cur;
  bool header = false;
  while (pos < text.size()) {
    const std::size_t offset = pos;
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    if (!header) {
      if (line != kExtHeader) throw ParseError("missing extended ground-truth header", offset);
      header = true;
      continue;
    }
    if (line.empty()) continue;
    if (line == "region") {
      if (in_region) throw ParseError("nested region", offset);
      in_region = true;
      seen = 0;
      cur = {};
      continue;
    }
    if (line == "end") {
      if (!in_region || seen != 0x1F) throw ParseError("incomplete region record", offset);
      out.push_back(std::move(cur));
      in_region = false;
      continue;
    }
    const std::size_t colon = line.find(':');
    if (colon == std::string_view::npos) throw ParseError("expected 'key: value'", offset);
    const std::string_view key = line.substr(0, colon);
    std::string_view value = line.substr(colon + 1);
    if (!value.empty() && value.front() == ' ') value.remove_prefix(1);
    if (key == "regions" && !in_region) {
      declared = static_cast<int>(parse_number(value, offset));
      continue;
    }
    if (!in_region) throw ParseError("field outside a region: " + std::string(key), offset);
    unsigned bit = 0;
    if (key == "polygon") {
      cur.polygon = pairs(parse_numbers(value, offset), offset);
      bit = 1;
    } else if (key == "centerline") {
      cur.centerline = pairs(parse_numbers(value, offset), offset);
      bit = 2;
    } else if (key == "local_height") {
      cur.local_height = parse_number(value, offset);
      bit = 4;
    } else if (key == "transcription") {
      try {
        cur.transcription = nlohmann::json::parse(value).get<std::string>();
      } catch (const std::exception&) {
        throw ParseError("bad transcription string", offset);
      }
      bit = 8;
    } else if (key == "flags") {
      std::istringstream ss{std::string(value)};
      std::string name;
      while (ss >> name) {
        if (name == "none") continue;
        else if (name == "multi_component") cur.flags.multi_component = true;
        else if (name == "self_intersecting") cur.flags.self_intersecting = true;
        else if (name == "overflow") cur.flags.overflow = true;
        else if (name == "degenerate") cur.flags.degenerate = true;
        else throw ParseError("unknown flag '" + name + "'", offset);
      }
      bit = 16;
    } else {
      throw ParseError("unknown field '" + std::string(key) + "'", offset);
    }
    if (seen & bit) throw ParseError("duplicate field '" + std::string(key) + "'", offset);
    seen |= bit;
  }
  if (!header) throw ParseError("missing extended ground-truth header", 0);
  if (in_region) throw ParseError("unterminated region", text.size());
  if (declared >= 0 && declared != static_cast<int>(out.size()))
    throw ParseError("region count does not match the declared count", text.size());
  return out;
}

DatasetManifest make_manifest(std::vector<SceneCount> scenes, const ConfigSnapshot* config) {
  DatasetManifest m;
  std::sort(scenes.begin(), scenes.end(), [](const SceneCount& a, const SceneCount& b) { return a.scene_id < b.scene_id; });
  m.scenes = std::move(scenes);
  for (const SceneCount& s : m.scenes) m.total_regions += s.regions;
  if (config) {
    m.config = *config;
    m.has_config = true;
  }
  return m;
}

namespace {

ordered_json manifest_body(const DatasetManifest& m) {
  ordered_json j;
  j["format"] = "mapsynth-manifest 1";
  j["scene_count"] = m.scenes.size();
  j["total_regions"] = m.total_regions;
  ordered_json scenes = ordered_json::array();
  for (const SceneCount& s : m.scenes) {
    ordered_json e;
    e["id"] = s.scene_id;
    e["regions"] = s.regions;
    if (!s.gt_hash.empty()) e["gt_hash"] = s.gt_hash;
    scenes.push_back(e);
  }
  j["scenes"] = scenes;
  if (m.has_config) {
    ordered_json c;
    c["seed"] = m.config.seed;
    c["alpha"] = format_fixed(m.config.alpha, 6);
    c["interpolation_distance"] = format_fixed(m.config.interpolation_distance, 6);
    c["font_set_hash"] = m.config.font_set_hash;
    for (const auto& [k, v] : m.config.extra) c[k] = v;
    j["config"] = c;
  }
  return j;
}

}  // namespace

std::string DatasetManifest::hash() const { return hex64(fnv1a64(manifest_body(*this).dump())); }

std::string format_manifest(const DatasetManifest& m) {
  ordered_json j = manifest_body(m);
  j["hash"] = m.hash();
  return j.dump(2) + "\n";
}

DatasetManifest parse_manifest(std::string_view text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("manifest: ") + e.what(), e.byte);
  }
  try {
    std::vector<SceneCount> scenes;
    for (const auto& e : j.at("scenes"))
      scenes.push_back({e.at("id").get<std::string>(), e.at("regions").get<int>(), e.value("gt_hash", std::string())});
    ConfigSnapshot config;
    const bool has_config = j.contains("config");
    if (has_config) {
      const auto& c = j.at("config");
      for (const auto& [k, v] : c.items()) {
        if (k == "seed") config.seed = v.get<std::uint64_t>();
        else if (k == "alpha") config.alpha = std::stod(v.get<std::string>());
        else if (k == "interpolation_distance") config.interpolation_distance = std::stod(v.get<std::string>());
        else if (k == "font_set_hash") config.font_set_hash = v.get<std::string>();
        else config.extra[k] = v.get<std::string>();
      }
    }
    DatasetManifest m = make_manifest(std::move(scenes), has_config ? &config : nullptr);
    if (j.at("total_regions").get<int>() != m.total_regions)
      throw Error(ErrorCode::Format, "manifest total does not equal the sum of scene counts");
    if (j.contains("hash") && j.at("hash").get<std::string>() != m.hash())
      throw Error(ErrorCode::Format, "manifest hash mismatch");
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Format, std::string("manifest: ") + e.what());
  }
}

DatasetManifest compute_stats(const fs::path& root) {
  const DatasetLayout layout{root};
  std::map<std::string, SceneCount> scenes;
  auto scan = [&](const fs::path& dir, bool extended) {
    if (!fs::is_directory(dir)) return;
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (!entry.is_regular_file() || entry.path().extension() != ".txt") continue;
      const std::string id = image_id_from_file(entry.path());
      if (scenes.count(id)) continue;
      scenes[id] = {id, count_regions(entry.path(), extended), {}};
    }
  };
  scan(root / "gt_ext", true);
  scan(root / "gt_icdar", false);
  for (auto& [id, s] : scenes)
    if (fs::exists(layout.icdar(id))) s.gt_hash = hex64(fnv1a64(read_file(layout.icdar(id))));

  std::vector<SceneCount> list;
  for (auto& [id, s] : scenes) list.push_back(s);
  if (fs::exists(layout.manifest())) {
    const DatasetManifest old = parse_manifest(read_file(layout.manifest()));
    return make_manifest(std::move(list), old.has_config ? &old.config : nullptr);
  }
  return make_manifest(std::move(list), nullptr);
}

}  // namespace mapsynth
