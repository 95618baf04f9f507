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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "annotate/annotate.hpp"

namespace mapsynth {

struct SceneRecord {
  std::string scene_id;
  int width = 512;
  int height = 512;
  std::vector<AnnotationRecord> annotations;
};

/// Layout of a dataset directory.
struct DatasetLayout {
  std::filesystem::path root;

  std::filesystem::path image(const std::string& id) const { return root / "images" / (id + ".png"); }
  std::filesystem::path icdar(const std::string& id) const { return root / "gt_icdar" / ("gt_" + id + ".txt"); }
  std::filesystem::path extended(const std::string& id) const { return root / "gt_ext" / (id + ".txt"); }
  std::filesystem::path manifest() const { return root / "manifest"; }
};

/// Polygon vertices clamped to [0, width-1] x [0, height-1].
Ring clamp_to_image(std::span<const Point> ring, int width, int height);

std::string format_icdar_gt(const SceneRecord& scene);
void export_icdar_gt(const SceneRecord& scene, const std::filesystem::path& out);

/// Region as stored in the extended format.
struct ExtendedRegion {
  Ring polygon;  // integer vertices
  std::vector<Point> centerline;
  double local_height = 0.0;
  std::string transcription;
  AnnotationFlags flags;
};

std::string format_extended(const SceneRecord& scene);
std::string format_extended(std::span<const ExtendedRegion> regions);
void export_extended(const SceneRecord& scene, const std::filesystem::path& out);

/// Throws ParseError with the byte offset of the offending line.
std::vector<ExtendedRegion> parse_extended(std::string_view text);

/// Generation settings recorded with the dataset.
struct ConfigSnapshot {
  std::uint64_t seed = 0;
  double alpha = 0.02;
  double interpolation_distance = 9.0;
  std::string font_set_hash;
  std::map<std::string, std::string> extra;  // further settings, stringified
};

struct SceneCount {
  std::string scene_id;
  int regions = 0;
  std::string gt_hash;  // FNV-1a of the ICDAR ground-truth bytes, empty when unknown
};

struct DatasetManifest {
  std::vector<SceneCount> scenes;  // sorted by id
  int total_regions = 0;
  ConfigSnapshot config;
  bool has_config = false;

  /// FNV-1a 64 over the canonical serialisation without the hash line.
  std::string hash() const;
};

/// Sorts scenes and recomputes the total.
DatasetManifest make_manifest(std::vector<SceneCount> scenes, const ConfigSnapshot* config);

std::string format_manifest(const DatasetManifest& m);
DatasetManifest parse_manifest(std::string_view text);

/// Recounts regions from gt_ext (falling back to gt_icdar) and copies the
/// config snapshot from an existing manifest. A missing or empty directory
/// yields an empty manifest.
DatasetManifest compute_stats(const std::filesystem::path& root);

}  // namespace mapsynth
