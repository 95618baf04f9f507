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

#include "mapsynth/mapsynth.h"

#include <cmath>
#include <limits>
#include <new>
#include <ostream>
#include <set>
#include <streambuf>
#include <string>
#include <vector>

#include <json.hpp>

#include "annotate/annotate.hpp"
#include "common/error.hpp"
#include "geo/projection.hpp"
#include "geo/tile_fetch.hpp"
#include "metrics/wolf.hpp"
#include "pipeline/commands.hpp"
#include "pipeline/config.hpp"
#include "raster/png_io.hpp"

struct ms_config {
  mapsynth::RunConfig cfg;
};

struct ms_image {
  mapsynth::TileImage img;
};

struct ms_annotation {
  mapsynth::AnnotationRecord rec;
  std::vector<double> polygon_xy;
  std::vector<double> centerline_xy;
};

namespace {

thread_local std::string g_last_error;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

class SinkBuf final : public std::streambuf {
 public:
  explicit SinkBuf(ms_sink sink) : sink_(sink) {}
  ~SinkBuf() override { sync(); }

 protected:
  int_type overflow(int_type ch) override {
    if (ch != traits_type::eof()) {
      buf_.push_back(static_cast<char>(ch));
      if (ch == '\n') flush_buf();
    }
    return ch;
  }
  std::streamsize xsputn(const char* s, std::streamsize n) override {
    buf_.append(s, static_cast<std::size_t>(n));
    if (buf_.find('\n') != std::string::npos) flush_buf();
    return n;
  }
  int sync() override {
    flush_buf();
    return 0;
  }

 private:
  void flush_buf() {
    if (!buf_.empty() && sink_.write) sink_.write(sink_.user, buf_.data(), buf_.size());
    buf_.clear();
  }
  ms_sink sink_;
  std::string buf_;
};

class SinkStream : public std::ostream {
 public:
  explicit SinkStream(ms_sink sink) : std::ostream(nullptr), buf_(sink) { rdbuf(&buf_); }
  ~SinkStream() override { flush(); }

 private:
  SinkBuf buf_;
};

ms_status fail(ms_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

template <class F>
ms_status guarded(F&& f) {
  g_last_error.clear();
  try {
    f();
    return MS_OK;
  } catch (const mapsynth::Error& e) {
    return fail(static_cast<ms_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(MS_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(MS_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(MS_ERR_INTERNAL, "unknown error");
  }
}

#define MS_REQUIRE(cond, msg) \
  do {                        \
    if (!(cond)) return fail(MS_ERR_ARGUMENT, msg); \
  } while (0)

std::vector<mapsynth::SceneId> parse_scenes(const char* const* ids, std::size_t n) {
  std::vector<mapsynth::SceneId> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (!ids[i]) throw mapsynth::Error(mapsynth::ErrorCode::Argument, "null scene id");
    out.push_back(mapsynth::parse_scene_id(ids[i]));
  }
  return out;
}

std::vector<mapsynth::Ring> to_rings(const ms_polygons& p) {
  std::vector<mapsynth::Ring> out;
  std::size_t offset = 0;
  for (std::size_t i = 0; i < p.count; ++i) {
    mapsynth::Ring r;
    for (std::size_t k = 0; k < p.counts[i]; ++k, ++offset) r.push_back({p.xy[2 * offset], p.xy[2 * offset + 1]});
    out.push_back(std::move(r));
  }
  return out;
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::copy(s.begin(), s.end(), out);
  out[s.size()] = '\0';
  return out;
}

double or_nan(const std::optional<double>& v) { return v ? *v : kNaN; }

}  // namespace

extern "C" {

const char* ms_version(void) { return "0.1.0"; }

const char* ms_status_string(ms_status status) {
  switch (status) {
    case MS_OK: return "ok";
    case MS_ERR_ARGUMENT: return "argument error";
    case MS_ERR_PARSE: return "parse error";
    case MS_ERR_IO: return "i/o error";
    case MS_ERR_NETWORK: return "network error";
    case MS_ERR_FORMAT: return "format error";
    case MS_ERR_DOMAIN: return "domain error";
    case MS_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* ms_last_error(void) { return g_last_error.c_str(); }

void ms_string_free(char* s) { delete[] s; }

ms_status ms_config_new(ms_config** out) {
  MS_REQUIRE(out, "ms_config_new: null output");
  return guarded([&] { *out = new ms_config{}; });
}

void ms_config_free(ms_config* cfg) { delete cfg; }

ms_status ms_config_apply_json(ms_config* cfg, const char* json) {
  MS_REQUIRE(cfg && json, "ms_config_apply_json: null argument");
  return guarded([&] {
    mapsynth::RunConfig copy = cfg->cfg;
    mapsynth::apply_config_json(copy, json);
    cfg->cfg = std::move(copy);
  });
}

ms_status ms_config_set(ms_config* cfg, const char* key, const char* value) {
  MS_REQUIRE(cfg && key && value, "ms_config_set: null argument");
  return guarded([&] {
    static const std::set<std::string> kStringKeys{"tile_template", "tile_dir",  "cache_dir", "vector_input",
                                                   "font_config",   "style_table", "ink",     "output_dir"};
    nlohmann::json j = nlohmann::json::object();
    if (kStringKeys.count(key)) {
      j[key] = value;
    } else {
      try {
        j[key] = nlohmann::json::parse(value);
      } catch (const nlohmann::json::exception&) {
        throw mapsynth::Error(mapsynth::ErrorCode::Argument,
                              std::string("bad value '") + value + "' for '" + key + "'");
      }
    }
    mapsynth::RunConfig copy = cfg->cfg;
    mapsynth::apply_config_json(copy, j.dump());
    cfg->cfg = std::move(copy);
  });
}

ms_status ms_config_to_json(const ms_config* cfg, char** out_json) {
  MS_REQUIRE(cfg && out_json, "ms_config_to_json: null argument");
  return guarded([&] { *out_json = dup_string(mapsynth::config_to_json(cfg->cfg)); });
}

ms_status ms_generate(const ms_config* cfg, const char* const* scene_ids, size_t scene_count, ms_sink log,
                      int* exit_code) {
  MS_REQUIRE(cfg, "ms_generate: null config");
  MS_REQUIRE(scene_count == 0 || scene_ids, "ms_generate: null scene list");
  return guarded([&] {
    SinkStream ls(log);
    const std::vector<mapsynth::SceneId> scenes = parse_scenes(scene_ids, scene_count);
    const auto summary = mapsynth::run_generate(cfg->cfg, ls, scene_count ? &scenes : nullptr);
    if (exit_code) *exit_code = summary.exit_code;
  });
}

ms_status ms_annotate_dir(const ms_config* cfg, const char* layer_dir, const char* out_dir, ms_sink log,
                          int* exit_code) {
  MS_REQUIRE(cfg && layer_dir && out_dir, "ms_annotate_dir: null argument");
  return guarded([&] {
    SinkStream ls(log);
    const int code = mapsynth::run_annotate(layer_dir, out_dir, cfg->cfg, ls);
    if (exit_code) *exit_code = code;
  });
}

void ms_eval_options_init(ms_eval_options* opts) {
  if (!opts) return;
  *opts = ms_eval_options{nullptr, nullptr, 0.5, 0.5, 1.0, nullptr, nullptr, nullptr, nullptr};
}

ms_status ms_evaluate(const ms_eval_options* opts, ms_sink out, ms_sink log, ms_eval_result* result, int* exit_code) {
  MS_REQUIRE(opts && opts->gt_dir && opts->det_dir, "ms_evaluate: gt_dir and det_dir are required");
  return guarded([&] {
    mapsynth::EvaluateOptions o;
    o.gt_dir = opts->gt_dir;
    o.det_dir = opts->det_dir;
    o.eval = {opts->t_r, opts->t_p, opts->k};
    if (opts->series_file) o.series_file = opts->series_file;
    if (opts->report_csv) o.report_csv = opts->report_csv;
    if (opts->sweep_spec) o.sweep_spec = opts->sweep_spec;
    if (opts->sweep_csv) o.sweep_csv = opts->sweep_csv;
    SinkStream os(out), ls(log);
    const auto summary = mapsynth::run_evaluate(o, os, ls);
    if (result) {
      result->precision = or_nan(summary.report.all.precision);
      result->recall = or_nan(summary.report.all.recall);
      result->f1 = or_nan(summary.report.all.f1);
      result->images = summary.report.all.images;
      result->excluded = summary.only_in_gt.size() + summary.only_in_det.size();
    }
    if (exit_code) *exit_code = summary.exit_code;
  });
}

ms_status ms_sweep(const char* gt_dir, const char* det_dir, const char* t_r_spec, const char* t_p_spec, double k,
                   const char* out_csv, ms_sink out, ms_sink log, int* exit_code) {
  MS_REQUIRE(gt_dir && det_dir && t_r_spec, "ms_sweep: gt_dir, det_dir and t_r_spec are required");
  return guarded([&] {
    mapsynth::SweepOptions o;
    o.gt_dir = gt_dir;
    o.det_dir = det_dir;
    o.t_r_spec = t_r_spec;
    if (t_p_spec) o.t_p_spec = t_p_spec;
    o.k = k;
    if (out_csv) o.out_csv = out_csv;
    SinkStream os(out), ls(log);
    mapsynth::run_sweep(o, os, ls, exit_code);
  });
}

ms_status ms_stats(const char* dataset_dir, ms_sink out, size_t* scenes, size_t* regions) {
  MS_REQUIRE(dataset_dir, "ms_stats: null directory");
  return guarded([&] {
    SinkStream os(out);
    const auto m = mapsynth::run_stats(dataset_dir, os);
    if (scenes) *scenes = m.scenes.size();
    if (regions) *regions = static_cast<size_t>(m.total_regions);
  });
}

ms_status ms_fetch_tiles(const ms_config* cfg, const char* const* scene_ids, size_t scene_count, ms_sink log,
                         int* exit_code) {
  MS_REQUIRE(cfg, "ms_fetch_tiles: null config");
  MS_REQUIRE(scene_count == 0 || scene_ids, "ms_fetch_tiles: null scene list");
  return guarded([&] {
    SinkStream ls(log);
    const std::vector<mapsynth::SceneId> scenes = parse_scenes(scene_ids, scene_count);
    const int code = mapsynth::run_fetch_tiles(cfg->cfg, ls, scene_count ? &scenes : nullptr);
    if (exit_code) *exit_code = code;
  });
}

ms_status ms_image_read_png(const char* path, ms_image** out) {
  MS_REQUIRE(path && out, "ms_image_read_png: null argument");
  return guarded([&] { *out = new ms_image{mapsynth::read_png(path)}; });
}

ms_status ms_fetch_tile(const char* url_template, int zoom, int x, int y, const char* cache_dir, ms_image** out) {
  MS_REQUIRE(url_template && cache_dir && out, "ms_fetch_tile: null argument");
  return guarded([&] {
    *out = new ms_image{mapsynth::fetch_tile(url_template, mapsynth::TileAddress{zoom, x, y, 256}, cache_dir)};
  });
}

void ms_image_free(ms_image* img) { delete img; }
int ms_image_width(const ms_image* img) { return img ? img->img.width() : 0; }
int ms_image_height(const ms_image* img) { return img ? img->img.height() : 0; }
const uint8_t* ms_image_pixels(const ms_image* img) { return img ? img->img.samples().data() : nullptr; }

ms_status ms_project_to_pixel(double lon, double lat, int zoom, int tile_x, int tile_y, double* px, double* py) {
  MS_REQUIRE(px && py, "ms_project_to_pixel: null output");
  return guarded([&] {
    const mapsynth::Point p = mapsynth::project_to_pixel({lon, lat}, mapsynth::TileAddress{zoom, tile_x, tile_y, 256});
    *px = p.x;
    *py = p.y;
  });
}

ms_status ms_score(ms_polygons gt, ms_polygons det, double t_r, double t_p, double k, ms_score_result* result) {
  MS_REQUIRE(result, "ms_score: null result");
  MS_REQUIRE((gt.count == 0 || (gt.xy && gt.counts)) && (det.count == 0 || (det.xy && det.counts)),
             "ms_score: null polygon data");
  return guarded([&] {
    const mapsynth::Score s = mapsynth::score(to_rings(gt), to_rings(det), mapsynth::EvalConfig{t_r, t_p, k});
    result->precision = or_nan(s.precision);
    result->recall = or_nan(s.recall);
    result->f1 = or_nan(s.f1);
    result->one_to_one = s.counts.one_to_one;
    result->splits = s.counts.splits;
    result->merges = s.counts.merges;
  });
}

ms_status ms_annotate_pixels(const int32_t* xy, size_t count, int width, int height, double alpha,
                             double interpolation_distance, ms_annotation** out) {
  MS_REQUIRE(out && (count == 0 || xy), "ms_annotate_pixels: null argument");
  return guarded([&] {
    std::vector<mapsynth::Pixel> px(count);
    for (size_t i = 0; i < count; ++i) px[i] = {xy[2 * i], xy[2 * i + 1]};
    mapsynth::AnnotateOptions opts;
    opts.alpha = alpha;
    opts.interpolation_distance = interpolation_distance;
    auto ann = std::make_unique<ms_annotation>();
    ann->rec = mapsynth::annotate_pixels(px, width, height, opts);
    for (const auto& p : ann->rec.polygon) ann->polygon_xy.insert(ann->polygon_xy.end(), {p.x, p.y});
    for (const auto& p : ann->rec.centerline.points) ann->centerline_xy.insert(ann->centerline_xy.end(), {p.x, p.y});
    *out = ann.release();
  });
}

void ms_annotation_free(ms_annotation* ann) { delete ann; }

const double* ms_annotation_polygon(const ms_annotation* ann, size_t* vertex_count) {
  if (vertex_count) *vertex_count = ann ? ann->polygon_xy.size() / 2 : 0;
  return ann ? ann->polygon_xy.data() : nullptr;
}

const double* ms_annotation_centerline(const ms_annotation* ann, size_t* point_count) {
  if (point_count) *point_count = ann ? ann->centerline_xy.size() / 2 : 0;
  return ann ? ann->centerline_xy.data() : nullptr;
}

double ms_annotation_local_height(const ms_annotation* ann) { return ann ? ann->rec.local_height : kNaN; }

unsigned ms_annotation_flags(const ms_annotation* ann) {
  if (!ann) return 0;
  const auto& f = ann->rec.flags;
  return (f.multi_component ? MS_FLAG_MULTI_COMPONENT : 0u) | (f.self_intersecting ? MS_FLAG_SELF_INTERSECTING : 0u) |
         (f.overflow ? MS_FLAG_OVERFLOW : 0u) | (f.degenerate ? MS_FLAG_DEGENERATE : 0u);
}

}  // extern "C"
