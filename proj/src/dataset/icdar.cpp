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

#include "dataset/icdar.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "common/error.hpp"
#include "common/fs_util.hpp"

namespace mapsynth {

namespace {

bool looks_numeric(std::string_view s) {
  if (s.empty()) return false;
  std::string tmp(s);
  char* end = nullptr;
  std::strtod(tmp.c_str(), &end);
  return end == tmp.c_str() + tmp.size();
}

bool needs_quotes(std::string_view s) {
  return s.empty() || looks_numeric(s) || s.find_first_of(",\"\r\n") != std::string_view::npos ||
         s.front() == ' ' || s.back() == ' ';
}

struct Field {
  std::string text;
  bool quoted = false;
};

// CSV-style split; a quoted field may only be the last one.
std::vector<Field> split_fields(std::string_view line, std::string& error) {
  std::vector<Field> out;
  std::size_t i = 0;
  while (true) {
    Field f;
    if (i < line.size() && line[i] == '"') {
      f.quoted = true;
      ++i;
      while (true) {
        if (i >= line.size()) {
          error = "unterminated quoted field";
          return {};
        }
        if (line[i] == '"') {
          if (i + 1 < line.size() && line[i + 1] == '"') {
            f.text += '"';
            i += 2;
            continue;
          }
          ++i;
          break;
        }
        f.text += line[i++];
      }
      if (i != line.size()) {
        error = "quoted field must be the last one";
        return {};
      }
      out.push_back(std::move(f));
      return out;
    }
    const std::size_t comma = line.find(',', i);
    f.text = std::string(line.substr(i, comma == std::string_view::npos ? std::string_view::npos : comma - i));
    out.push_back(std::move(f));
    if (comma == std::string_view::npos) return out;
    i = comma + 1;
  }
}

std::string trim_spaces(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

long round_coordinate(double v) { return std::lround(v); }

std::string format_icdar_line(std::span<const Point> polygon, std::string_view transcription) {
  std::string out;
  for (Point p : polygon) {
    out += std::to_string(round_coordinate(p.x));
    out += ',';
    out += std::to_string(round_coordinate(p.y));
    out += ',';
  }
  if (needs_quotes(transcription)) {
    out += '"';
    for (char c : transcription) {
      if (c == '"') out += '"';
      out += c;
    }
    out += '"';
  } else {
    out += transcription;
  }
  return out;
}

namespace {

// End of the record starting at `pos`: the next newline outside a quoted
// field. An unterminated quote ends the record at the first newline.
std::size_t record_end(std::string_view text, std::size_t pos) {
  bool quoted = false;
  bool field_start = true;
  for (std::size_t i = pos; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c != '"') continue;
      if (i + 1 < text.size() && text[i + 1] == '"') {
        ++i;
        continue;
      }
      quoted = false;
    } else if (c == '\n') {
      return i;
    } else if (c == '"' && field_start) {
      quoted = true;
    }
    field_start = c == ',';
  }
  if (!quoted) return text.size();
  const std::size_t nl = text.find('\n', pos);
  return nl == std::string_view::npos ? text.size() : nl;
}

}  // namespace

IcdarFile parse_icdar(std::string_view text, const std::string& file_name) {
  IcdarFile out;
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  int next_line = 1;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t nl = record_end(text, pos);
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    const int line_no = next_line;
    next_line += 1 + static_cast<int>(std::count(line.begin(), line.end(), '\n'));
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim_spaces(line).empty()) continue;

    auto fail = [&](const std::string& msg) { out.errors.push_back({file_name, line_no, msg}); };
    std::string err;
    std::vector<Field> fields = split_fields(line, err);
    if (!err.empty()) {
      fail(err);
      continue;
    }
    IcdarRegion region;
    std::size_t n_coords = fields.size();
    const Field& last = fields.back();
    if (last.quoted) {
      region.transcription = last.text;
      region.has_transcription = true;
      --n_coords;
    } else if (!looks_numeric(trim_spaces(last.text))) {
      region.transcription = last.text;
      region.has_transcription = true;
      --n_coords;
    }
    if (n_coords % 2 != 0) {
      fail("odd coordinate count " + std::to_string(n_coords));
      continue;
    }
    if (n_coords < 6) {
      fail("polygon needs at least 3 vertices");
      continue;
    }
    bool ok = true;
    for (std::size_t k = 0; k < n_coords && ok; k += 2) {
      const std::string xs = trim_spaces(fields[k].text), ys = trim_spaces(fields[k + 1].text);
      if (!looks_numeric(xs) || !looks_numeric(ys)) {
        fail("bad coordinate in field " + std::to_string(looks_numeric(xs) ? k + 2 : k + 1));
        ok = false;
        break;
      }
      region.polygon.push_back({std::strtod(xs.c_str(), nullptr), std::strtod(ys.c_str(), nullptr)});
    }
    if (!ok) continue;
    region.self_intersecting = !is_simple(region.polygon);
    make_clockwise(region.polygon);
    out.regions.push_back(std::move(region));
  }
  return out;
}

std::string image_id_from_file(const std::filesystem::path& file) {
  std::string stem = file.stem().string();
  for (const char* prefix : {"gt_", "res_"})
    if (stem.rfind(prefix, 0) == 0) return stem.substr(std::string(prefix).size());
  return stem;
}

std::map<std::string, IcdarFile> import_detections(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw Error(ErrorCode::Io, "not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".txt") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::map<std::string, IcdarFile> out;
  for (const fs::path& f : files) {
    const std::string id = image_id_from_file(f);
    if (out.count(id)) throw Error(ErrorCode::Format, "two files map to image id '" + id + "' in " + dir.string());
    out.emplace(id, parse_icdar(read_file(f), f.filename().string()));
  }
  return out;
}

}  // namespace mapsynth
