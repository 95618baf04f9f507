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

#include "geo/style.hpp"

#include <fstream>
#include <random>

#include "common/error.hpp"
#include "common/text.hpp"

namespace mapsynth {

const char* to_string(FontGroup g) {
  switch (g) {
    case FontGroup::Large: return "large";
    case FontGroup::Medium: return "medium";
    case FontGroup::Small: return "small";
  }
  return "small";
}

std::pair<int, int> size_range(FontGroup g) {
  switch (g) {
    case FontGroup::Large: return {60, 80};
    case FontGroup::Medium: return {35, 45};
    case FontGroup::Small: return {20, 30};
  }
  return {20, 30};
}

StyleTable StyleTable::builtin() {
  StyleTable t;
  for (const char* c : {"canal", "city", "county", "town", "village", "waterfall", "wetland", "island"})
    t.set(c, FontGroup::Large);
  for (const char* c : {"airfield", "airport", "allotment", "allotments", "archaeological", "battlefield", "camp site",
                        "camp_site", "cliff", "dock", "farmland", "farm", "forest", "fort", "hamlet", "nature reserve",
                        "nature_reserve", "reservoir", "ruins", "vineyard", "rail", "river", "stream"})
    t.set(c, FontGroup::Medium);
  return t;
}

StyleTable StyleTable::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open style table " + path.string());
  StyleTable t = builtin();
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::Parse, path.string() + ":" + std::to_string(lineno) + ": expected fclass=group");
    const std::string cls = trim(s.substr(0, eq));
    const std::string grp = trim(s.substr(eq + 1));
    FontGroup g;
    if (grp == "large") g = FontGroup::Large;
    else if (grp == "medium") g = FontGroup::Medium;
    else if (grp == "small") g = FontGroup::Small;
    else throw Error(ErrorCode::Parse, path.string() + ":" + std::to_string(lineno) + ": unknown group " + grp);
    t.set(cls, g);
  }
  return t;
}

FontGroup StyleTable::group_of(std::string_view fclass) const {
  auto it = table_.find(fclass);
  return it == table_.end() ? FontGroup::Small : it->second;
}

FontSpec assign_style(std::string_view fclass, std::uint64_t seed, const StyleTable& table) {
  FontSpec spec;
  spec.group = table.group_of(fclass);
  const std::uint64_t h = fnv1a64(fclass);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32)};
  std::mt19937_64 rng(seq);
  const auto [lo, hi] = size_range(spec.group);
  spec.size_pt = std::uniform_int_distribution<int>(lo, hi)(rng);
  spec.font_id = std::uniform_int_distribution<int>(0, kFontCount - 1)(rng);
  return spec;
}

}  // namespace mapsynth
