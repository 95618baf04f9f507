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
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "common/geometry.hpp"

namespace mapsynth {

/// Rounds half away from zero.
long round_coordinate(double v);

/// One `x1,y1,...,xn,yn,transcription` line (no newline). Coordinates are
/// rounded to integers; the transcription is quoted when it is empty, looks
/// numeric, or contains a comma, a quote or a line break.
std::string format_icdar_line(std::span<const Point> polygon, std::string_view transcription);

struct IcdarRegion {
  Ring polygon;  // normalised to clockwise
  std::string transcription;
  bool has_transcription = false;
  bool self_intersecting = false;
};

struct IcdarLineError {
  std::string file;
  int line = 0;
  std::string message;
};

struct IcdarFile {
  std::vector<IcdarRegion> regions;
  std::vector<IcdarLineError> errors;
};

/// Parses a whole file. Malformed lines are recorded and skipped. A leading
/// UTF-8 byte order mark and CR line endings are tolerated.
IcdarFile parse_icdar(std::string_view text, const std::string& file_name = "<memory>");

/// Every `*.txt` file of the directory keyed by image id: the file stem with
/// a leading "gt_" or "res_" removed.
std::map<std::string, IcdarFile> import_detections(const std::filesystem::path& dir);

std::string image_id_from_file(const std::filesystem::path& file);

}  // namespace mapsynth
