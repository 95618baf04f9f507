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

#include "pipeline/commands.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "annotate/annotate.hpp"
#include "common/error.hpp"
#include "common/fs_util.hpp"
#include "common/text.hpp"
#include "dataset/icdar.hpp"
#include "geo/tile_fetch.hpp"
#include "metrics/clipping.hpp"
#include "raster/png_io.hpp"
#include "raster/render.hpp"

namespace mapsynth {

namespace fs = std::filesystem;

namespace {

std::string file_hash(const std::string& path) { return hex64(fnv1a64(read_file(path))); }

std::string pct(const std::optional<double>& v) { return v ? format_fixed(*v * 100.0, 2) : "NA"; }

}  // namespace

GenerationContext make_generation_context(const RunConfig& cfg) {
  validate(cfg);
  if (!cfg.seed) throw Error(ErrorCode::Argument, "generate needs --seed");
  if (cfg.vector_input.empty()) throw Error(ErrorCode::Argument, "generate needs --vector-input");
  if (!fs::is_regular_file(cfg.vector_input))
    throw Error(ErrorCode::Argument, "vector input not found: " + cfg.vector_input);
  if (cfg.output_dir.empty()) throw Error(ErrorCode::Argument, "generate needs --out");
  if (cfg.tile_dir.empty() && cfg.tile_template.empty())
    throw Error(ErrorCode::Argument, "generate needs --tile-dir or --tile-template");

  GenerationContext ctx;
  ctx.config = cfg;
  ParseReport parsed = parse_features(read_file(cfg.vector_input));
  ctx.features = std::move(parsed.features);
  std::sort(ctx.features.begin(), ctx.features.end(),
            [](const GeoFeature& a, const GeoFeature& b) { return a.id < b.id; });
  ctx.styles = cfg.style_table.empty() ? StyleTable::builtin() : StyleTable::from_file(cfg.style_table);
  if (cfg.font_config.empty()) {
    ctx.glyphs = std::make_unique<BuiltinStrokeFont>();
  } else {
    ctx.glyphs = load_font_files(read_font_config(cfg.font_config));
  }
  ctx.tiles = {cfg.tile_dir, cfg.tile_template, effective_cache_dir(cfg)};

  ConfigSnapshot& s = ctx.snapshot;
  s.seed = *cfg.seed;
  s.alpha = cfg.alpha;
  s.interpolation_distance = cfg.interpolation_distance;
  s.font_set_hash = hex64(fnv1a64(ctx.glyphs->fingerprint()));
  s.extra["zoom"] = std::to_string(cfg.zoom);
  s.extra["arc_step"] = format_fixed(cfg.arc_step, 6);
  s.extra["noise_sigma"] = format_fixed(cfg.noise_sigma, 6);
  s.extra["px_per_pt"] = format_fixed(cfg.px_per_pt, 6);
  s.extra["letter_spacing"] = format_fixed(cfg.letter_spacing, 6);
  s.extra["ink"] = format_rgb(cfg.ink);
  s.extra["antialias"] = cfg.antialias ? "true" : "false";
  s.extra["vector_hash"] = file_hash(cfg.vector_input);
  if (!cfg.style_table.empty()) s.extra["style_table_hash"] = file_hash(cfg.style_table);
  return ctx;
}

std::uint64_t scene_seed(std::uint64_t run_seed, const std::string& scene_id) {
  const std::uint64_t h = fnv1a64(scene_id);
  std::seed_seq seq{static_cast<std::uint32_t>(run_seed), static_cast<std::uint32_t>(run_seed >> 32),
                    static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32)};
  std::mt19937_64 rng(seq);
  return rng();
}

SceneOutput generate_scene(const GenerationContext& ctx, const SceneId& scene) {
  const RunConfig& cfg = ctx.config;
  SceneOutput out;
  const TileImage background = load_scene_background(ctx.tiles, scene);

  PlacementOptions popts;
  popts.px_per_pt = cfg.px_per_pt;
  popts.letter_spacing = cfg.letter_spacing;
  const LabelPlacer placer(*ctx.glyphs, popts);
  const SceneFrame frame{scene.origin(), Canvas{background.width(), background.height()}};

  std::vector<std::vector<PlacedLabel>> candidates;
  for (const GeoFeature& f : ctx.features) {
    const FontSpec font = assign_style(f.fclass, *cfg.seed, ctx.styles);
    std::vector<PlacedLabel> c;
    try {
      c = placer.candidates(f, font, frame);
    } catch (const Error&) {
      continue;  // geometry outside the projectable range of this scene
    }
    if (!c.empty()) candidates.push_back(std::move(c));
  }
  out.labels = resolve_collisions(candidates);

  out.colored = render_colored_layer(out.labels, background.width(), background.height(), *ctx.glyphs);
  const TileImage gray = render_gray_layer(out.colored, cfg.ink, cfg.antialias);
  out.image = composite(background, gray);
  if (cfg.noise_sigma > 0)
    out.image = add_wornout_noise(out.image, opaque_mask(gray), cfg.noise_sigma, scene_seed(*cfg.seed, scene.str()));

  std::vector<LabelInfo> infos;
  for (const PlacedLabel& l : out.labels) infos.push_back({l.color_index, l.text, l.overflow});
  AnnotateOptions aopts;
  aopts.alpha = cfg.alpha;
  aopts.interpolation_distance = cfg.interpolation_distance;
  aopts.arc_step = cfg.arc_step;
  out.record.scene_id = scene.str();
  out.record.width = background.width();
  out.record.height = background.height();
  out.record.annotations = annotate_layer(out.colored, infos, aopts);
  return out;
}

std::string format_label_sidecar(const std::vector<PlacedLabel>& labels) {
  std::string out;
  for (const PlacedLabel& l : labels)
    out += std::to_string(l.color_index) + "\t" + (l.overflow ? "1" : "0") + "\t" + nlohmann::json(l.text).dump() + "\n";
  return out;
}

std::vector<LabelInfo> parse_label_sidecar(std::string_view text) {
  std::vector<LabelInfo> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto t1 = line.find('\t'), t2 = line.find('\t', t1 == std::string::npos ? t1 : t1 + 1);
    if (t1 == std::string::npos || t2 == std::string::npos)
      throw Error(ErrorCode::Format, "label sidecar line " + std::to_string(line_no) + ": expected 3 fields");
    try {
      LabelInfo info;
      info.color_index = static_cast<std::uint32_t>(std::stoul(line.substr(0, t1)));
      info.overflow = line.substr(t1 + 1, t2 - t1 - 1) == "1";
      info.transcription = nlohmann::json::parse(line.substr(t2 + 1)).get<std::string>();
      out.push_back(std::move(info));
    } catch (const std::exception& e) {
      throw Error(ErrorCode::Format, "label sidecar line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

GenerateSummary run_generate(const RunConfig& cfg, std::ostream& log, const std::vector<SceneId>* requested) {
  const GenerationContext ctx = make_generation_context(cfg);
  const DatasetLayout layout{cfg.output_dir};
  const std::vector<SceneId> scenes =
      requested ? *requested : scenes_covering(ctx.features, cfg.zoom, cfg.max_scenes);

  std::mutex log_mu;
  std::vector<std::optional<SceneCount>> results(scenes.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < scenes.size(); i = next++) {
      const std::string id = scenes[i].str();
      try {
        SceneOutput s = generate_scene(ctx, scenes[i]);
        const std::string icdar = format_icdar_gt(s.record);
        write_png(layout.image(id), s.image);
        write_file_atomic(layout.icdar(id), icdar);
        export_extended(s.record, layout.extended(id));
        if (cfg.keep_layers) {
          write_png(layout.root / "layers" / (id + ".png"), s.colored);
          write_file_atomic(layout.root / "layers" / (id + ".tsv"), format_label_sidecar(s.labels));
        }
        results[i] = SceneCount{id, static_cast<int>(s.record.annotations.size()), hex64(fnv1a64(icdar))};
        std::lock_guard lock(log_mu);
        log << "scene=" << id << " status=ok labels=" << s.labels.size()
            << " regions=" << s.record.annotations.size() << "\n";
      } catch (const std::exception& e) {
        std::lock_guard lock(log_mu);
        log << "scene=" << id << " status=failed error=\"" << e.what() << "\"\n";
      }
    }
  };
  const int threads = std::max(1, std::min<int>(cfg.jobs, static_cast<int>(scenes.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  GenerateSummary summary;
  std::vector<SceneCount> counts;
  for (const auto& r : results) {
    if (r) {
      counts.push_back(*r);
      ++summary.scenes_ok;
    } else {
      ++summary.scenes_failed;
    }
  }
  summary.manifest = make_manifest(std::move(counts), &ctx.snapshot);
  write_file_atomic(layout.manifest(), format_manifest(summary.manifest));
  summary.exit_code = summary.scenes_ok > 0 ? kExitOk : kExitPartial;
  log << "summary command=generate scenes=" << scenes.size() << " ok=" << summary.scenes_ok
      << " failed=" << summary.scenes_failed << " regions=" << summary.manifest.total_regions
      << " manifest_hash=" << summary.manifest.hash() << "\n";
  return summary;
}

int run_annotate(const fs::path& layer_dir, const fs::path& out_dir, const RunConfig& cfg, std::ostream& log) {
  validate(cfg);
  if (!fs::is_directory(layer_dir)) throw Error(ErrorCode::Argument, "not a directory: " + layer_dir.string());
  std::vector<fs::path> layers;
  for (const auto& e : fs::directory_iterator(layer_dir))
    if (e.is_regular_file() && e.path().extension() == ".png") layers.push_back(e.path());
  std::sort(layers.begin(), layers.end());

  AnnotateOptions aopts;
  aopts.alpha = cfg.alpha;
  aopts.interpolation_distance = cfg.interpolation_distance;
  aopts.arc_step = cfg.arc_step;
  const DatasetLayout layout{out_dir};
  std::vector<SceneCount> counts;
  int failed = 0;
  for (const fs::path& png : layers) {
    const std::string id = png.stem().string();
    try {
      const TileImage colored = read_png(png);
      std::vector<LabelInfo> infos;
      const fs::path sidecar = fs::path(png).replace_extension(".tsv");
      if (fs::exists(sidecar)) {
        infos = parse_label_sidecar(read_file(sidecar));
      } else {
        for (std::uint32_t idx : label_indices(colored)) infos.push_back({idx, "", false});
      }
      SceneRecord rec;
      rec.scene_id = id;
      rec.width = colored.width();
      rec.height = colored.height();
      rec.annotations = annotate_layer(colored, infos, aopts);
      const std::string icdar = format_icdar_gt(rec);
      write_file_atomic(layout.icdar(id), icdar);
      export_extended(rec, layout.extended(id));
      counts.push_back({id, static_cast<int>(rec.annotations.size()), hex64(fnv1a64(icdar))});
      log << "scene=" << id << " status=ok regions=" << rec.annotations.size() << "\n";
    } catch (const std::exception& e) {
      ++failed;
      log << "scene=" << id << " status=failed error=\"" << e.what() << "\"\n";
    }
  }
  ConfigSnapshot snap;
  snap.alpha = cfg.alpha;
  snap.interpolation_distance = cfg.interpolation_distance;
  snap.extra["arc_step"] = format_fixed(cfg.arc_step, 6);
  const DatasetManifest m = make_manifest(std::move(counts), &snap);
  write_file_atomic(layout.manifest(), format_manifest(m));
  log << "summary command=annotate layers=" << layers.size() << " failed=" << failed
      << " regions=" << m.total_regions << "\n";
  return failed == 0 ? kExitOk : kExitPartial;
}

namespace {

fs::path resolve_gt_dir(const fs::path& p) {
  if (fs::is_directory(p / "gt_icdar")) return p / "gt_icdar";
  return p;
}

std::map<std::string, std::string> read_series(const fs::path& file) {
  std::map<std::string, std::string> out;
  if (file.empty()) return out;
  std::istringstream in(read_file(file));
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw Error(ErrorCode::Argument, "series file: expected 'image_id,series'");
    out[trim(line.substr(0, comma))] = trim(line.substr(comma + 1));
  }
  return out;
}

std::vector<Ring> usable_polygons(const IcdarFile& f, const std::string& id, const char* side, std::ostream& log,
                                  bool& warned) {
  std::vector<Ring> out;
  for (const IcdarRegion& r : f.regions) {
    const double area = clippable(r.polygon) ? polygon_area(r.polygon) : even_odd_area(r.polygon);
    if (!(area > 0)) {
      log << "warning: " << side << " image " << id << ": zero-area polygon skipped\n";
      warned = true;
      continue;
    }
    out.push_back(r.polygon);
  }
  return out;
}

}  // namespace

std::string format_all_row(const SummaryRow& all) {
  return "All precision=" + pct(all.precision) + " recall=" + pct(all.recall) + " f1=" + pct(all.f1) +
         " images=" + std::to_string(all.images);
}

namespace {

struct LoadedImages {
  std::vector<std::string> ids;
  std::vector<MatchMatrices> matrices;
  std::vector<std::string> only_in_gt;
  std::vector<std::string> only_in_det;
  bool warned = false;
};

LoadedImages load_image_pairs(const fs::path& gt_dir, const fs::path& det_dir, std::ostream& log) {
  const auto gt = import_detections(resolve_gt_dir(gt_dir));
  const auto det = import_detections(resolve_gt_dir(det_dir));
  LoadedImages out;
  for (const auto* files : {&gt, &det})
    for (const auto& [id, f] : *files)
      for (const IcdarLineError& e : f.errors) {
        log << "warning: " << e.file << ":" << e.line << ": " << e.message << "\n";
        out.warned = true;
      }
  for (const auto& [id, f] : gt)
    if (!det.count(id)) out.only_in_gt.push_back(id);
  for (const auto& [id, f] : det)
    if (!gt.count(id)) out.only_in_det.push_back(id);
  for (const std::string& id : out.only_in_gt) log << "warning: image " << id << " has no detection file, excluded\n";
  for (const std::string& id : out.only_in_det) log << "warning: image " << id << " has no ground truth, excluded\n";
  out.warned = out.warned || !out.only_in_gt.empty() || !out.only_in_det.empty();

  for (const auto& [id, g] : gt) {
    auto it = det.find(id);
    if (it == det.end()) continue;
    const std::vector<Ring> gp = usable_polygons(g, id, "ground truth", log, out.warned);
    const std::vector<Ring> dp = usable_polygons(it->second, id, "detection", log, out.warned);
    out.ids.push_back(id);
    out.matrices.push_back(build_matrices(gp, dp));
  }
  if (out.ids.empty()) throw Error(ErrorCode::Format, "no image present in both directories");
  return out;
}

}  // namespace

EvaluateSummary run_evaluate(const EvaluateOptions& opts, std::ostream& out, std::ostream& log) {
  validate(opts.eval);
  const LoadedImages images = load_image_pairs(opts.gt_dir, opts.det_dir, log);
  EvaluateSummary summary;
  summary.only_in_gt = images.only_in_gt;
  summary.only_in_det = images.only_in_det;

  std::vector<ImageScore> rows;
  for (std::size_t i = 0; i < images.ids.size(); ++i) rows.push_back({images.ids[i], score(images.matrices[i], opts.eval)});
  summary.report = aggregate(std::move(rows), read_series(opts.series_file));
  if (!opts.report_csv.empty()) write_file_atomic(opts.report_csv, report_csv(summary.report));
  out << format_all_row(summary.report.all) << "\n";

  if (!opts.sweep_spec.empty()) {
    const std::vector<double> grid = parse_grid(opts.sweep_spec);
    summary.sweep = sweep(images.matrices, grid, grid, opts.eval.k);
    const std::string csv = sweep_csv(*summary.sweep);
    if (opts.sweep_csv.empty()) out << csv;
    else write_file_atomic(opts.sweep_csv, csv);
  }
  summary.exit_code = images.warned ? kExitPartial : kExitOk;
  log << "summary command=evaluate images=" << summary.report.all.images << " excluded="
      << summary.only_in_gt.size() + summary.only_in_det.size() << " f1=" << pct(summary.report.all.f1) << "\n";
  return summary;
}

SweepTable run_sweep(const SweepOptions& opts, std::ostream& out, std::ostream& log, int* exit_code) {
  if (opts.k < 0 || opts.k > 1) throw Error(ErrorCode::Argument, "k must lie in [0, 1]");
  const std::vector<double> t_r = parse_grid(opts.t_r_spec);
  const std::vector<double> t_p = parse_grid(opts.t_p_spec.empty() ? opts.t_r_spec : opts.t_p_spec);
  const LoadedImages images = load_image_pairs(opts.gt_dir, opts.det_dir, log);
  SweepTable table = sweep(images.matrices, t_r, t_p, opts.k);
  const std::string csv = sweep_csv(table);
  if (opts.out_csv.empty()) out << csv;
  else write_file_atomic(opts.out_csv, csv);
  log << "summary command=sweep images=" << images.ids.size() << " rows=" << t_r.size() << " cols=" << t_p.size()
      << "\n";
  if (exit_code) *exit_code = images.warned ? kExitPartial : kExitOk;
  return table;
}

DatasetManifest run_stats(const fs::path& dataset_dir, std::ostream& out) {
  const DatasetManifest m = compute_stats(dataset_dir);
  out << format_manifest(m);
  return m;
}

int run_fetch_tiles(const RunConfig& cfg, std::ostream& log, const std::vector<SceneId>* requested) {
  validate(cfg);
  if (cfg.tile_template.empty()) throw Error(ErrorCode::Argument, "fetch-tiles needs --tile-template");
  std::vector<SceneId> scenes;
  if (requested) {
    scenes = *requested;
  } else {
    if (cfg.vector_input.empty()) throw Error(ErrorCode::Argument, "fetch-tiles needs --vector-input or --scene");
    if (!fs::is_regular_file(cfg.vector_input))
      throw Error(ErrorCode::Argument, "vector input not found: " + cfg.vector_input);
    const ParseReport parsed = parse_features(read_file(cfg.vector_input));
    scenes = scenes_covering(parsed.features, cfg.zoom, cfg.max_scenes);
  }
  const std::string cache = effective_cache_dir(cfg);
  FetchStats stats;
  int failed = 0, total = 0;
  for (const SceneId& s : scenes)
    for (const TileAddress& t : s.tiles()) {
      ++total;
      try {
        fetch_tile(cfg.tile_template, t, cache, &stats);
      } catch (const std::exception& e) {
        ++failed;
        log << "tile=" << t.zoom << "/" << t.x << "/" << t.y << " status=failed error=\"" << e.what() << "\"\n";
      }
    }
  log << "summary command=fetch-tiles tiles=" << total << " cache_hits=" << stats.cache_hits
      << " fetched=" << stats.network_fetches << " failed=" << failed << " cache_dir=" << cache << "\n";
  if (failed == 0) return kExitOk;
  return kExitPartial;
}

}  // namespace mapsynth
