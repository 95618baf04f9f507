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

// Command-line front end. Talks to the library only through the C API.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mapsynth/mapsynth.h"

namespace {

void write_to(void* user, const char* text, size_t len) { std::fwrite(text, 1, len, static_cast<std::FILE*>(user)); }

const ms_sink kStdout{write_to, stdout};
const ms_sink kStderr{write_to, stderr};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommandError : std::runtime_error {
  explicit CommandError(ms_status s) : std::runtime_error(ms_last_error()), status(s) {}
  ms_status status;
};

void check(ms_status s) {
  if (s == MS_ERR_ARGUMENT) throw UsageError(ms_last_error());
  if (s != MS_OK) throw CommandError(s);
}

class Config {
 public:
  Config() { check(ms_config_new(&cfg_)); }
  ~Config() { ms_config_free(cfg_); }
  Config(const Config&) = delete;
  Config& operator=(const Config&) = delete;

  ms_config* get() const { return cfg_; }

  void load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    check(ms_config_apply_json(cfg_, ss.str().c_str()));
  }
  void set(const std::string& key, const std::string& value) {
    const ms_status s = ms_config_set(cfg_, key.c_str(), value.c_str());
    if (s == MS_ERR_ARGUMENT || s == MS_ERR_PARSE) throw UsageError(ms_last_error());
    check(s);
  }
  nlohmann::json json() const {
    char* text = nullptr;
    check(ms_config_to_json(cfg_, &text));
    nlohmann::json j = nlohmann::json::parse(text);
    ms_string_free(text);
    return j;
  }

 private:
  ms_config* cfg_ = nullptr;
};

// Flags that map onto configuration keys. Only flags actually given on the
// command line override the config file.
struct ConfigFlags {
  std::vector<std::pair<CLI::Option*, std::string>> options;
  std::vector<std::unique_ptr<std::string>> values;

  void add(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help,
           const std::string& type = "TEXT") {
    values.push_back(std::make_unique<std::string>());
    CLI::Option* opt = app->add_option(flag, *values.back(), help)->type_name(type);
    options.emplace_back(opt, key);
  }
  void add_switch(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
    CLI::Option* opt = app->add_flag(flag, help);
    values.push_back(std::make_unique<std::string>("true"));
    options.emplace_back(opt, key);
  }
  void apply(Config& cfg) const {
    for (std::size_t i = 0; i < options.size(); ++i) {
      const auto& [opt, key] = options[i];
      if (opt->count() == 0) continue;
      cfg.set(key, opt->get_expected_max() == 0 ? std::string("true") : *values[i]);
    }
  }
};

void add_generation_flags(CLI::App* app, ConfigFlags& f) {
  f.add(app, "--seed", "seed", "random seed (required for generate)", "UINT");
  f.add(app, "--vector-input", "vector_input", "GeoJSON FeatureCollection with OSM-style fclass/name", "FILE");
  f.add(app, "--tile-dir", "tile_dir", "local background tiles laid out as <dir>/<z>/<x>/<y>.png", "DIR");
  f.add(app, "--tile-template", "tile_template", "tile URL with {z}, {x} and {y} placeholders", "URL");
  f.add(app, "--cache-dir", "cache_dir", "tile cache (default $MAPSYNTH_CACHE_DIR, then ./tile_cache)", "DIR");
  f.add(app, "--zoom", "zoom", "tile zoom level", "INT");
  f.add(app, "--max-scenes", "max_scenes", "stop after this many scenes (0 = all)", "INT");
  f.add(app, "--font-config", "font_config", "text file with 16 font paths (default built-in stroke font)", "FILE");
  f.add(app, "--style-table", "style_table", "fclass=group overrides of the built-in style table", "FILE");
  f.add(app, "--noise-sigma", "noise_sigma", "std-dev of worn-out noise on text pixels (0 = off)", "FLOAT");
  f.add(app, "--px-per-pt", "px_per_pt", "pixels per font point", "FLOAT");
  f.add(app, "--letter-spacing", "letter_spacing", "multiplier of glyph advances along lines", "FLOAT");
  f.add(app, "--ink", "ink", "text colour of the gray layer, #rrggbb or r,g,b", "COLOR");
  f.add_switch(app, "--antialias", "antialias", "anti-alias the gray text layer");
  f.add_switch(app, "--keep-layers", "keep_layers", "also write the colored layers and label sidecars");
}

void add_annotation_flags(CLI::App* app, ConfigFlags& f) {
  f.add(app, "--alpha", "alpha", "alpha-shape parameter (0 = convex hull)", "FLOAT");
  f.add(app, "--interpolation-distance", "interpolation_distance", "boundary densification step in pixels",
        "FLOAT");
  f.add(app, "--arc-step", "arc_step", "arc-length spacing of centerline points in pixels", "FLOAT");
}

std::vector<const char*> c_strings(const std::vector<std::string>& v) {
  std::vector<const char*> out;
  for (const auto& s : v) out.push_back(s.c_str());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthetic map text dataset generator and evaluator"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(ms_version()));

  std::string config_file;
  bool print_config = false;
  ConfigFlags global;
  app.add_option("--config", config_file, "JSON run configuration; flags override it")->type_name("FILE");
  app.add_flag("--print-config", print_config, "print the effective configuration and exit");
  global.add(&app, "--jobs,-j", "jobs", "scenes processed in parallel", "INT");

  // generate
  ConfigFlags gen_flags;
  std::vector<std::string> gen_scenes;
  CLI::App* gen = app.add_subcommand("generate", "render scenes, annotate them and write the dataset");
  add_generation_flags(gen, gen_flags);
  add_annotation_flags(gen, gen_flags);
  gen_flags.add(gen, "--out,-o", "output_dir", "dataset directory", "DIR");
  gen->add_option("--scene", gen_scenes, "scene id z_x_y of the NW tile (repeatable; default covers the data)");

  // annotate
  ConfigFlags ann_flags;
  std::string layer_dir, ann_out;
  CLI::App* ann = app.add_subcommand("annotate", "annotate colored text layers (<id>.png plus optional <id>.tsv)");
  ann->add_option("layer_dir", layer_dir, "directory of colored layers")
      ->check(CLI::ExistingDirectory)
      ->required()->type_name("DIR");
  ann->add_option("--out,-o", ann_out, "output directory for extended and ICDAR ground truth")
      ->required()
      ->type_name("DIR");
  add_annotation_flags(ann, ann_flags);

  // evaluate
  ConfigFlags eval_flags;
  std::string gt_dir, det_dir, series_file, report_csv, sweep_spec, sweep_csv;
  CLI::App* ev = app.add_subcommand("evaluate", "score detections against ground truth with Wolf's metrics");
  ev->add_option("--gt", gt_dir, "ground-truth directory (ICDAR text files, or a dataset root)")
      ->check(CLI::ExistingDirectory)
      ->required()
      ->type_name("DIR");
  ev->add_option("--det", det_dir, "detection directory of ICDAR text files")
      ->check(CLI::ExistingDirectory)
      ->required()->type_name("DIR");
  eval_flags.add(ev, "--t-r", "t_r", "area recall threshold", "FLOAT");
  eval_flags.add(ev, "--t-p", "t_p", "area precision threshold", "FLOAT");
  eval_flags.add(ev, "--k", "k", "weight of split and merge matches", "FLOAT");
  ev->add_option("--series", series_file, "image-id to series mapping (image_id,series per line)")->type_name("FILE");
  ev->add_option("--report", report_csv, "per-image and per-series CSV report")->type_name("FILE");
  ev->add_option("--sweep", sweep_spec, "also sweep t_r and t_p over lo:hi:step")->type_name("SPEC");
  ev->add_option("--sweep-csv", sweep_csv, "where to write the sweep table (default stdout)")->type_name("FILE");

  // sweep
  std::string sw_gt, sw_det, sw_tr = "0.1:0.9:0.1", sw_tp, sw_out;
  double sw_k = 1.0;
  CLI::App* sw = app.add_subcommand("sweep", "F1 over a grid of t_r and t_p");
  sw->add_option("--gt", sw_gt, "ground-truth directory")->check(CLI::ExistingDirectory)->required()->type_name("DIR");
  sw->add_option("--det", sw_det, "detection directory")->check(CLI::ExistingDirectory)->required()->type_name("DIR");
  sw->add_option("--t-r", sw_tr, "t_r grid lo:hi:step or a single value")->capture_default_str();
  sw->add_option("--t-p", sw_tp, "t_p grid (default: same as --t-r)");
  sw->add_option("--k", sw_k, "weight of split and merge matches")->capture_default_str();
  sw->add_option("--out,-o", sw_out, "CSV file (default stdout)")->type_name("FILE");

  // stats
  std::string stats_dir;
  CLI::App* st = app.add_subcommand("stats", "recount a dataset directory and print its manifest");
  st->add_option("dataset_dir", stats_dir, "dataset root")->required()->type_name("DIR");

  // fetch-tiles
  ConfigFlags fetch_flags;
  std::vector<std::string> fetch_scenes;
  CLI::App* fetch = app.add_subcommand("fetch-tiles", "download the background tiles of each scene into the cache");
  fetch_flags.add(fetch, "--tile-template", "tile_template", "tile URL with {z}, {x} and {y} placeholders", "URL");
  fetch_flags.add(fetch, "--cache-dir", "cache_dir", "tile cache (default $MAPSYNTH_CACHE_DIR, then ./tile_cache)",
                  "DIR");
  fetch_flags.add(fetch, "--vector-input", "vector_input", "GeoJSON whose extent selects the scenes", "FILE");
  fetch_flags.add(fetch, "--zoom", "zoom", "tile zoom level", "INT");
  fetch_flags.add(fetch, "--max-scenes", "max_scenes", "stop after this many scenes (0 = all)", "INT");
  fetch->add_option("--scene", fetch_scenes, "scene id z_x_y (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? MS_EXIT_OK : MS_EXIT_USAGE;
  }

  try {
    Config cfg;
    if (!config_file.empty()) cfg.load_file(config_file);
    global.apply(cfg);
    for (const ConfigFlags* f : {&gen_flags, &ann_flags, &eval_flags, &fetch_flags}) f->apply(cfg);

    if (print_config) {
      std::cout << cfg.json().dump(2) << "\n";
      return MS_EXIT_OK;
    }

    int exit_code = MS_EXIT_OK;
    if (gen->parsed()) {
      const auto ids = c_strings(gen_scenes);
      check(ms_generate(cfg.get(), ids.empty() ? nullptr : ids.data(), ids.size(), kStderr, &exit_code));
    } else if (ann->parsed()) {
      check(ms_annotate_dir(cfg.get(), layer_dir.c_str(), ann_out.c_str(), kStderr, &exit_code));
    } else if (ev->parsed()) {
      const nlohmann::json j = cfg.json();
      ms_eval_options o;
      ms_eval_options_init(&o);
      o.gt_dir = gt_dir.c_str();
      o.det_dir = det_dir.c_str();
      o.t_r = j.at("t_r").get<double>();
      o.t_p = j.at("t_p").get<double>();
      o.k = j.at("k").get<double>();
      if (!series_file.empty()) o.series_file = series_file.c_str();
      if (!report_csv.empty()) o.report_csv = report_csv.c_str();
      if (!sweep_spec.empty()) o.sweep_spec = sweep_spec.c_str();
      if (!sweep_csv.empty()) o.sweep_csv = sweep_csv.c_str();
      ms_eval_result result{};
      check(ms_evaluate(&o, kStdout, kStderr, &result, &exit_code));
    } else if (sw->parsed()) {
      check(ms_sweep(sw_gt.c_str(), sw_det.c_str(), sw_tr.c_str(), sw_tp.empty() ? nullptr : sw_tp.c_str(), sw_k,
                     sw_out.empty() ? nullptr : sw_out.c_str(), kStdout, kStderr, &exit_code));
    } else if (st->parsed()) {
      check(ms_stats(stats_dir.c_str(), kStdout, nullptr, nullptr));
    } else if (fetch->parsed()) {
      const auto ids = c_strings(fetch_scenes);
      check(ms_fetch_tiles(cfg.get(), ids.empty() ? nullptr : ids.data(), ids.size(), kStderr, &exit_code));
    }
    std::fflush(stdout);
    return exit_code;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\nRun with --help for usage.\n";
    return MS_EXIT_USAGE;
  } catch (const CommandError& e) {
    std::cerr << "error (" << ms_status_string(e.status) << "): " << e.what() << "\n";
    return MS_EXIT_PARTIAL;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return MS_EXIT_PARTIAL;
  }
}
