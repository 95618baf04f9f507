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
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "annotate/annotate.hpp"
#include "dataset/dataset.hpp"
#include "geo/feature.hpp"
#include "geo/style.hpp"
#include "metrics/wolf.hpp"
#include "pipeline/config.hpp"
#include "pipeline/scenes.hpp"
#include "placement/placement.hpp"
#include "raster/glyphs.hpp"

namespace mapsynth {

enum ExitCode : int { kExitOk = 0, kExitPartial = 1, kExitUsage = 2 };

/// Everything a scene needs, loaded once per run.
struct GenerationContext {
  RunConfig config;
  std::vector<GeoFeature> features;  // sorted by id
  StyleTable styles;
  std::unique_ptr<GlyphProvider> glyphs;
  TileSource tiles;
  ConfigSnapshot snapshot;
};

/// Validates the config for generation (seed and vector input are required)
/// and loads features, fonts and the style table.
GenerationContext make_generation_context(const RunConfig& cfg);

struct SceneOutput {
  TileImage image;    // composited (and noised) scene
  TileImage colored;  // per-label colour layer
  std::vector<PlacedLabel> labels;
  SceneRecord record;
};

/// Place, render, composite and annotate one scene. Writes nothing.
SceneOutput generate_scene(const GenerationContext& ctx, const SceneId& scene);

/// Per-scene seed for noise, derived from the run seed and the scene id.
std::uint64_t scene_seed(std::uint64_t run_seed, const std::string& scene_id);

struct GenerateSummary {
  int exit_code = kExitOk;
  int scenes_ok = 0;
  int scenes_failed = 0;
  DatasetManifest manifest;
};

/// Full generation into cfg.output_dir. `scenes` overrides the covering set.
GenerateSummary run_generate(const RunConfig& cfg, std::ostream& log, const std::vector<SceneId>* scenes = nullptr);

/// Annotates every `<id>.png` colour layer of `layer_dir` into a dataset at
/// `out_dir` (gt_icdar, gt_ext, manifest). Transcriptions come from an
/// optional `<id>.tsv` sidecar: `index<TAB>overflow<TAB>"json string"`.
int run_annotate(const std::filesystem::path& layer_dir, const std::filesystem::path& out_dir, const RunConfig& cfg,
                 std::ostream& log);

std::string format_label_sidecar(const std::vector<PlacedLabel>& labels);
std::vector<LabelInfo> parse_label_sidecar(std::string_view text);

struct EvaluateOptions {
  std::filesystem::path gt_dir;
  std::filesystem::path det_dir;
  EvalConfig eval;
  std::filesystem::path series_file;  // optional "image_id,series" lines
  std::filesystem::path report_csv;   // optional
  std::string sweep_spec;             // optional "lo:hi:step" for both axes
  std::filesystem::path sweep_csv;    // optional; the table goes to `out` otherwise
};

struct EvaluateSummary {
  int exit_code = kExitOk;
  EvalReport report;
  std::vector<std::string> only_in_gt;
  std::vector<std::string> only_in_det;
  std::optional<SweepTable> sweep;
};

/// Prints the All row (percentages) to `out`, problems to `log`.
EvaluateSummary run_evaluate(const EvaluateOptions& opts, std::ostream& out, std::ostream& log);

std::string format_all_row(const SummaryRow& all);

struct SweepOptions {
  std::filesystem::path gt_dir;
  std::filesystem::path det_dir;
  std::string t_r_spec = "0.1:0.9:0.1";
  std::string t_p_spec;  // defaults to t_r_spec
  double k = 1.0;
  std::filesystem::path out_csv;  // the table goes to `out` otherwise
};

/// Mean per-image F1 over the threshold grid; rows t_r, columns t_p.
SweepTable run_sweep(const SweepOptions& opts, std::ostream& out, std::ostream& log, int* exit_code = nullptr);

/// Dataset statistics recounted from disk; the manifest JSON goes to `out`.
DatasetManifest run_stats(const std::filesystem::path& dataset_dir, std::ostream& out);

/// Downloads (or confirms cached) every tile of the covering scenes into the
/// cache directory, which then serves as a local tile dir.
int run_fetch_tiles(const RunConfig& cfg, std::ostream& log, const std::vector<SceneId>* scenes = nullptr);

}  // namespace mapsynth
