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

#include "geo/feature.hpp"

#include <json.hpp>

#include <optional>

#include "common/error.hpp"
#include "common/text.hpp"

namespace mapsynth {

using nlohmann::json;

namespace {

std::optional<LonLat> read_position(const json& j) {
  if (!j.is_array() || j.size() < 2 || !j[0].is_number() || !j[1].is_number()) return std::nullopt;
  LonLat p{j[0].get<double>(), j[1].get<double>()};
  if (!is_valid_lonlat(p)) return std::nullopt;
  return p;
}

std::optional<std::vector<LonLat>> read_line(const json& j) {
  if (!j.is_array() || j.size() < 2) return std::nullopt;
  std::vector<LonLat> out;
  out.reserve(j.size());
  for (const auto& pos : j) {
    auto p = read_position(pos);
    if (!p) return std::nullopt;
    out.push_back(*p);
  }
  return out;
}

std::optional<std::vector<std::vector<LonLat>>> read_polygon(const json& j) {
  if (!j.is_array() || j.empty()) return std::nullopt;
  std::vector<std::vector<LonLat>> rings;
  for (const auto& r : j) {
    auto ring = read_line(r);
    if (!ring || ring->size() < 4 || ring->front() != ring->back()) return std::nullopt;
    rings.push_back(std::move(*ring));
  }
  return rings;
}

std::optional<Geometry> read_geometry(const json& g, std::string& why) {
  auto fail = [&why](std::string msg) -> std::optional<Geometry> {
    why = std::move(msg);
    return std::nullopt;
  };
  if (!g.is_object() || !g.contains("type") || !g["type"].is_string()) return fail("missing geometry");
  const std::string type = g["type"];
  const json& c = g.contains("coordinates") ? g["coordinates"] : json();
  if (type == "Point") {
    auto p = read_position(c);
    if (!p) return fail("invalid Point coordinates");
    return PointGeometry{*p};
  }
  if (type == "LineString" || type == "MultiLineString") {
    PolylineSet set;
    if (type == "LineString") {
      auto l = read_line(c);
      if (!l) return fail("invalid LineString");
      set.lines.push_back(std::move(*l));
    } else {
      if (!c.is_array() || c.empty()) return fail("invalid MultiLineString");
      for (const auto& part : c) {
        auto l = read_line(part);
        if (!l) return fail("invalid MultiLineString part");
        set.lines.push_back(std::move(*l));
      }
    }
    return set;
  }
  if (type == "Polygon" || type == "MultiPolygon") {
    PolygonSet set;
    if (type == "Polygon") {
      auto p = read_polygon(c);
      if (!p) return fail("invalid Polygon");
      set.polygons.push_back(std::move(*p));
    } else {
      if (!c.is_array() || c.empty()) return fail("invalid MultiPolygon");
      for (const auto& part : c) {
        auto p = read_polygon(part);
        if (!p) return fail("invalid MultiPolygon part");
        set.polygons.push_back(std::move(*p));
      }
    }
    return set;
  }
  return fail("unsupported geometry type " + type);
}

std::optional<std::int64_t> read_id(const json& j) {
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_number_unsigned()) return static_cast<std::int64_t>(j.get<std::uint64_t>());
  if (j.is_string()) {
    const std::string s = j;
    try {
      std::size_t used = 0;
      const long long v = std::stoll(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
  }
  return std::nullopt;
}

}  // namespace

ParseReport parse_features(std::string_view data) {
  json doc;
  try {
    doc = json::parse(data.begin(), data.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed feature collection: ") + e.what(), e.byte);
  }
  if (!doc.is_object() || !doc.contains("features") || !doc["features"].is_array())
    throw ParseError("document is not a FeatureCollection", 0);

  ParseReport report;
  const json& feats = doc["features"];
  for (std::size_t idx = 0; idx < feats.size(); ++idx) {
    const json& f = feats[idx];
    const json props = f.is_object() && f.contains("properties") && f["properties"].is_object()
                           ? f["properties"]
                           : json::object();
    std::string name = props.contains("name") && props["name"].is_string() ? trim(props["name"].get<std::string>()) : "";
    if (name.empty()) {
      ++report.skipped_empty_name;
      continue;
    }
    std::string why;
    auto geom = f.is_object() && f.contains("geometry") ? read_geometry(f["geometry"], why) : std::nullopt;
    if (!geom) {
      ++report.skipped_unsupported;
      report.warnings.push_back("feature " + std::to_string(idx) + " skipped: " + (why.empty() ? "no geometry" : why));
      continue;
    }
    GeoFeature out;
    out.name = std::move(name);
    out.fclass = props.contains("fclass") && props["fclass"].is_string() ? trim(props["fclass"].get<std::string>()) : "";
    out.geometry = std::move(*geom);
    std::optional<std::int64_t> id;
    if (f.contains("id")) id = read_id(f["id"]);
    if (!id && props.contains("osm_id")) id = read_id(props["osm_id"]);
    out.id = id.value_or(static_cast<std::int64_t>(idx));
    report.features.push_back(std::move(out));
  }
  return report;
}

}  // namespace mapsynth
