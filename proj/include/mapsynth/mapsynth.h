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

/*
 * mapsynth C API.
 *
 * Every function returns an ms_status; on failure a message describing the
 * error is available from ms_last_error() on the calling thread until the
 * next API call on that thread. Objects are opaque handles released with the
 * matching *_free function. Strings returned through char** are owned by the
 * caller and released with ms_string_free.
 */
#ifndef MAPSYNTH_MAPSYNTH_H
#define MAPSYNTH_MAPSYNTH_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(MAPSYNTH_BUILDING)
#define MS_API __declspec(dllexport)
#else
#define MS_API __declspec(dllimport)
#endif
#else
#define MS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ms_status {
  MS_OK = 0,
  MS_ERR_ARGUMENT = 1,
  MS_ERR_PARSE = 2,
  MS_ERR_IO = 3,
  MS_ERR_NETWORK = 4,
  MS_ERR_FORMAT = 5,
  MS_ERR_DOMAIN = 6,
  MS_ERR_INTERNAL = 7
} ms_status;

/* Command exit codes reported through the int* exit_code parameters. */
#define MS_EXIT_OK 0
#define MS_EXIT_PARTIAL 1
#define MS_EXIT_USAGE 2

MS_API const char* ms_version(void);
MS_API const char* ms_status_string(ms_status status);
MS_API const char* ms_last_error(void);
MS_API void ms_string_free(char* s);

/* Text sink for command output and progress logs. `text` is not
 * NUL-terminated. A NULL sink discards the text. */
typedef void (*ms_write_fn)(void* user, const char* text, size_t len);

typedef struct ms_sink {
  ms_write_fn write;
  void* user;
} ms_sink;

/* ---- run configuration ------------------------------------------------ */

typedef struct ms_config ms_config;

MS_API ms_status ms_config_new(ms_config** out);
MS_API void ms_config_free(ms_config* cfg);
/* Overlays the keys of a JSON object (same keys as ms_config_to_json). */
MS_API ms_status ms_config_apply_json(ms_config* cfg, const char* json);
/* Sets one key from its textual value; numbers and booleans are parsed,
 * everything else is taken as a string. */
MS_API ms_status ms_config_set(ms_config* cfg, const char* key, const char* value);
MS_API ms_status ms_config_to_json(const ms_config* cfg, char** out_json);

/* ---- commands ---------------------------------------------------------- */

/* Generates the dataset into the configured output dir. `scene_ids`
 * ("z_x_y") may be NULL to cover the vector data. */
MS_API ms_status ms_generate(const ms_config* cfg, const char* const* scene_ids, size_t scene_count, ms_sink log,
                             int* exit_code);

MS_API ms_status ms_annotate_dir(const ms_config* cfg, const char* layer_dir, const char* out_dir, ms_sink log,
                                 int* exit_code);

typedef struct ms_eval_options {
  const char* gt_dir;
  const char* det_dir;
  double t_r;
  double t_p;
  double k;
  const char* series_file; /* optional */
  const char* report_csv;  /* optional */
  const char* sweep_spec;  /* optional, "lo:hi:step" */
  const char* sweep_csv;   /* optional */
} ms_eval_options;

/* Defaults: t_r = t_p = 0.5, k = 1, every path NULL. */
MS_API void ms_eval_options_init(ms_eval_options* opts);

typedef struct ms_eval_result {
  double precision; /* NaN when not applicable */
  double recall;
  double f1;
  size_t images;
  size_t excluded;
} ms_eval_result;

MS_API ms_status ms_evaluate(const ms_eval_options* opts, ms_sink out, ms_sink log, ms_eval_result* result,
                             int* exit_code);

/* F1 table as CSV to `out` (or to out_csv when not NULL). An empty or NULL
 * t_p_spec reuses t_r_spec. */
MS_API ms_status ms_sweep(const char* gt_dir, const char* det_dir, const char* t_r_spec, const char* t_p_spec,
                          double k, const char* out_csv, ms_sink out, ms_sink log, int* exit_code);

/* Dataset statistics; the manifest JSON is written to `out`. */
MS_API ms_status ms_stats(const char* dataset_dir, ms_sink out, size_t* scenes, size_t* regions);

MS_API ms_status ms_fetch_tiles(const ms_config* cfg, const char* const* scene_ids, size_t scene_count, ms_sink log,
                                int* exit_code);

/* ---- images ------------------------------------------------------------ */

typedef struct ms_image ms_image;

MS_API ms_status ms_image_read_png(const char* path, ms_image** out);
/* Fetches one tile through the cache (<cache_dir>/<z>/<x>/<y>.png). */
MS_API ms_status ms_fetch_tile(const char* url_template, int zoom, int x, int y, const char* cache_dir,
                               ms_image** out);
MS_API void ms_image_free(ms_image* img);
MS_API int ms_image_width(const ms_image* img);
MS_API int ms_image_height(const ms_image* img);
/* Row-major RGBA, width*height*4 bytes, valid while the image lives. */
MS_API const uint8_t* ms_image_pixels(const ms_image* img);

/* ---- geometry and metrics --------------------------------------------- */

MS_API ms_status ms_project_to_pixel(double lon, double lat, int zoom, int tile_x, int tile_y, double* px,
                                     double* py);

/* Polygons are passed as concatenated x,y pairs with per-polygon vertex
 * counts. */
typedef struct ms_polygons {
  const double* xy;
  const size_t* counts;
  size_t count;
} ms_polygons;

typedef struct ms_score_result {
  double precision; /* NaN when there are no detections */
  double recall;    /* NaN when there is no ground truth */
  double f1;        /* NaN when both are NaN */
  int one_to_one;
  int splits;
  int merges;
} ms_score_result;

MS_API ms_status ms_score(ms_polygons gt, ms_polygons det, double t_r, double t_p, double k,
                          ms_score_result* result);

/* ---- annotation -------------------------------------------------------- */

typedef struct ms_annotation ms_annotation;

enum {
  MS_FLAG_MULTI_COMPONENT = 1,
  MS_FLAG_SELF_INTERSECTING = 2,
  MS_FLAG_OVERFLOW = 4,
  MS_FLAG_DEGENERATE = 8
};

/* Annotates one label given its pixels as x,y integer pairs. */
MS_API ms_status ms_annotate_pixels(const int32_t* xy, size_t count, int width, int height, double alpha,
                                    double interpolation_distance, ms_annotation** out);
MS_API void ms_annotation_free(ms_annotation* ann);
/* Clockwise polygon and centerline as x,y pairs valid while `ann` lives. */
MS_API const double* ms_annotation_polygon(const ms_annotation* ann, size_t* vertex_count);
MS_API const double* ms_annotation_centerline(const ms_annotation* ann, size_t* point_count);
MS_API double ms_annotation_local_height(const ms_annotation* ann);
MS_API unsigned ms_annotation_flags(const ms_annotation* ann);

#ifdef __cplusplus
}
#endif

#endif /* MAPSYNTH_MAPSYNTH_H */
