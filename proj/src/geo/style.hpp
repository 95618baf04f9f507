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
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>

namespace mapsynth {

/// Font size group; the numeric value doubles as placement priority
/// (lower places first).
enum class FontGroup : int { Large = 0, Medium = 1, Small = 2 };

const char* to_string(FontGroup g);

inline constexpr int kFontCount = 16;

struct FontSpec {
  FontGroup group = FontGroup::Small;
  int size_pt = 20;
  int font_id = 0;  // [0, kFontCount)

  friend bool operator==(const FontSpec&, const FontSpec&) = default;
};

/// Inclusive point-size range of a group: Large [60,80], Medium [35,45],
/// Small [20,30].
std::pair<int, int> size_range(FontGroup g);

/// Exact-match feature-class -> group table. Unlisted classes are Small.
class StyleTable {
 public:
  /// The Large/Medium class lists of the reference style.
  static StyleTable builtin();

  /// Reads `fclass=group` lines (group is large|medium|small; '#' comments).
  /// Entries override the builtin table.
  static StyleTable from_file(const std::filesystem::path& path);

  void set(std::string fclass, FontGroup g) { table_[std::move(fclass)] = g; }
  FontGroup group_of(std::string_view fclass) const;
  const std::map<std::string, FontGroup, std::less<>>& entries() const { return table_; }

 private:
  std::map<std::string, FontGroup, std::less<>> table_;
};

/// Pure function of (fclass, seed): every label of one class shares a font
/// and size; the size is uniform over the group's range.
FontSpec assign_style(std::string_view fclass, std::uint64_t seed, const StyleTable& table = StyleTable::builtin());

}  // namespace mapsynth
