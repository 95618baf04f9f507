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

// Exercises the shared library through its C header only.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "mapsynth/mapsynth.h"

namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = MAPSYNTH_FIXTURE_DIR;

void append(void* user, const char* text, size_t len) { static_cast<std::string*>(user)->append(text, len); }

ms_sink capture(std::string& s) { return ms_sink{append, &s}; }

fs::path fresh_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("mapsynth_capi_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

struct Config {
  ms_config* cfg = nullptr;
  Config() { REQUIRE(ms_config_new(&cfg) == MS_OK); }
  ~Config() { ms_config_free(cfg); }
};

}  // namespace

TEST_CASE("version and status strings") {
  CHECK(std::strlen(ms_version()) > 0);
  CHECK(std::string(ms_status_string(MS_ERR_DOMAIN)) == "domain error");
}

TEST_CASE("config handles: set, json, errors") {
  Config c;
  CHECK(ms_config_set(c.cfg, "seed", "42") == MS_OK);
  CHECK(ms_config_set(c.cfg, "alpha", "0.1") == MS_OK);
  CHECK(ms_config_set(c.cfg, "tile_dir", "123") == MS_OK);
  CHECK(ms_config_set(c.cfg, "antialias", "true") == MS_OK);
  char* json = nullptr;
  REQUIRE(ms_config_to_json(c.cfg, &json) == MS_OK);
  const std::string j = json;
  ms_string_free(json);
  CHECK(j.find("\"seed\": 42") != std::string::npos);
  CHECK(j.find("\"tile_dir\": \"123\"") != std::string::npos);
  CHECK(j.find("\"antialias\": true") != std::string::npos);

  CHECK(ms_config_set(c.cfg, "bogus", "1") == MS_ERR_ARGUMENT);
  CHECK(std::string(ms_last_error()).find("bogus") != std::string::npos);
  CHECK(ms_config_set(c.cfg, "alpha", "abc") == MS_ERR_ARGUMENT);
  CHECK(ms_config_apply_json(c.cfg, "{") == MS_ERR_PARSE);
  CHECK(ms_config_apply_json(c.cfg, "{\"zoom\": 15}") == MS_OK);
  CHECK(ms_config_new(nullptr) == MS_ERR_ARGUMENT);
}

TEST_CASE("projection and scoring") {
  double x = 0, y = 0;
  REQUIRE(ms_project_to_pixel(0, 0, 0, 0, 0, &x, &y) == MS_OK);
  CHECK(x == doctest::Approx(128.0));
  CHECK(y == doctest::Approx(128.0));
  CHECK(ms_project_to_pixel(0, 89, 1, 0, 0, &x, &y) == MS_ERR_DOMAIN);

  const double sq[] = {0, 0, 10, 0, 10, 10, 0, 10, 20, 0, 30, 0, 30, 10, 20, 10};
  const size_t counts[] = {4, 4};
  const ms_polygons gt{sq, counts, 2};
  ms_score_result r{};
  REQUIRE(ms_score(gt, gt, 0.5, 0.5, 1.0, &r) == MS_OK);
  CHECK(r.precision == 1.0);
  CHECK(r.recall == 1.0);
  CHECK(r.one_to_one == 2);

  // One detection covering both boxes: a merge.
  const double big[] = {0, 0, 30, 0, 30, 10, 0, 10};
  const size_t one[] = {4};
  REQUIRE(ms_score(gt, ms_polygons{big, one, 1}, 0.5, 0.3, 0.8, &r) == MS_OK);
  CHECK(r.merges == 1);
  CHECK(r.precision == doctest::Approx(0.8));
  CHECK(r.recall == doctest::Approx(1.0));

  REQUIRE(ms_score(gt, ms_polygons{nullptr, nullptr, 0}, 0.5, 0.5, 1.0, &r) == MS_OK);
  CHECK(std::isnan(r.precision));
  CHECK(r.recall == 0.0);
  CHECK(r.f1 == 0.0);
  CHECK(ms_score(gt, gt, 1.5, 0.5, 1.0, &r) == MS_ERR_ARGUMENT);
}

TEST_CASE("annotate pixels through the C API") {
  std::vector<int32_t> xy;
  for (int y = 20; y < 32; ++y)
    for (int x = 10; x < 90; ++x) {
      xy.push_back(x);
      xy.push_back(y);
    }
  ms_annotation* ann = nullptr;
  REQUIRE(ms_annotate_pixels(xy.data(), xy.size() / 2, 128, 64, 0.02, 9.0, &ann) == MS_OK);
  size_t n = 0;
  const double* poly = ms_annotation_polygon(ann, &n);
  CHECK(n >= 4);
  double s = 0;
  for (size_t i = 0; i < n; ++i) {
    const size_t j = (i + 1) % n;
    s += poly[2 * i] * poly[2 * j + 1] - poly[2 * j] * poly[2 * i + 1];
  }
  CHECK(s > 0);  // clockwise on screen
  size_t m = 0;
  ms_annotation_centerline(ann, &m);
  CHECK(m >= 2);
  CHECK(ms_annotation_local_height(ann) == doctest::Approx(6.0).epsilon(0.2));
  CHECK((ms_annotation_flags(ann) & MS_FLAG_DEGENERATE) == 0);
  ms_annotation_free(ann);
  CHECK(ms_annotate_pixels(nullptr, 0, 10, 10, 0.02, 9.0, &ann) == MS_ERR_ARGUMENT);
  CHECK(std::string(ms_last_error()).find("no pixels") != std::string::npos);
}

TEST_CASE("generate, stats and evaluate on the fixtures") {
  const fs::path out = fresh_dir("gen");
  Config c;
  REQUIRE(ms_config_set(c.cfg, "seed", "5") == MS_OK);
  REQUIRE(ms_config_set(c.cfg, "vector_input", (kFixtures / "london.geojson").c_str()) == MS_OK);
  REQUIRE(ms_config_set(c.cfg, "tile_dir", (kFixtures / "tiles").c_str()) == MS_OK);
  REQUIRE(ms_config_set(c.cfg, "output_dir", out.c_str()) == MS_OK);
  std::string log;
  int code = -1;
  REQUIRE(ms_generate(c.cfg, nullptr, 0, capture(log), &code) == MS_OK);
  CHECK(code == MS_EXIT_OK);
  CHECK(log.find("summary command=generate scenes=2 ok=2 failed=0") != std::string::npos);

  const char* one[] = {"16_32746_21792"};
  const fs::path out1 = fresh_dir("gen_one");
  REQUIRE(ms_config_set(c.cfg, "output_dir", out1.c_str()) == MS_OK);
  REQUIRE(ms_generate(c.cfg, one, 1, ms_sink{nullptr, nullptr}, &code) == MS_OK);
  CHECK(fs::exists(out1 / "images" / "16_32746_21792.png"));
  CHECK_FALSE(fs::exists(out1 / "images" / "16_32744_21792.png"));
  const char* bad[] = {"nope"};
  CHECK(ms_generate(c.cfg, bad, 1, ms_sink{nullptr, nullptr}, &code) == MS_ERR_ARGUMENT);

  std::string manifest;
  size_t scenes = 0, regions = 0;
  REQUIRE(ms_stats(out.c_str(), capture(manifest), &scenes, &regions) == MS_OK);
  CHECK(scenes == 2);
  CHECK(regions > 0);
  CHECK(manifest.find("\"total_regions\": " + std::to_string(regions)) != std::string::npos);

  ms_eval_options o;
  ms_eval_options_init(&o);
  const std::string gt = out.string(), det = (out / "gt_icdar").string();
  o.gt_dir = gt.c_str();
  o.det_dir = det.c_str();
  std::string stdout_text;
  ms_eval_result res{};
  REQUIRE(ms_evaluate(&o, capture(stdout_text), ms_sink{nullptr, nullptr}, &res, &code) == MS_OK);
  CHECK(code == MS_EXIT_OK);
  CHECK(res.f1 == doctest::Approx(1.0));
  CHECK(res.images == 2);
  CHECK(stdout_text == "All precision=100.00 recall=100.00 f1=100.00 images=2\n");

  std::string table;
  REQUIRE(ms_sweep(gt.c_str(), det.c_str(), "0.5", nullptr, 1.0, nullptr, capture(table), ms_sink{nullptr, nullptr},
                   &code) == MS_OK);
  CHECK(table == "t_r\\t_p,0.50\n0.50,1.000000\n");

  Config missing;
  ms_config_set(missing.cfg, "seed", "1");
  CHECK(ms_generate(missing.cfg, nullptr, 0, ms_sink{nullptr, nullptr}, &code) == MS_ERR_ARGUMENT);
  CHECK(std::strlen(ms_last_error()) > 0);
}

TEST_CASE("annotate directory through the C API") {
  const fs::path out = fresh_dir("ann");
  Config c;
  int code = -1;
  REQUIRE(ms_annotate_dir(c.cfg, (kFixtures / "layers").c_str(), out.c_str(), ms_sink{nullptr, nullptr}, &code) ==
          MS_OK);
  CHECK(code == MS_EXIT_OK);
  CHECK(fs::file_size(out / "gt_ext" / "16_32744_21792.txt") ==
        fs::file_size(kFixtures / "golden" / "16_32744_21792.txt"));
}

TEST_CASE("images") {
  ms_image* img = nullptr;
  REQUIRE(ms_image_read_png((kFixtures / "tiles/16/32744/21792.png").c_str(), &img) == MS_OK);
  CHECK(ms_image_width(img) == 256);
  CHECK(ms_image_height(img) == 256);
  CHECK(ms_image_pixels(img)[3] == 255);
  ms_image_free(img);
  CHECK(ms_image_read_png("/nonexistent.png", &img) == MS_ERR_IO);
  CHECK(ms_fetch_tile("http://x/{z}/{x}.png", 1, 0, 0, "/tmp", &img) == MS_ERR_ARGUMENT);
}
