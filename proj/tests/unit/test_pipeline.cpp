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

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "common/error.hpp"
#include "common/text.hpp"
#include "dataset/icdar.hpp"
#include "metrics/clipping.hpp"
#include "pipeline/commands.hpp"
#include "pipeline/config.hpp"
#include "pipeline/scenes.hpp"
#include "raster/png_io.hpp"

using namespace mapsynth;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = MAPSYNTH_FIXTURE_DIR;

fs::path fresh_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("mapsynth_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunConfig fixture_config(const fs::path& out) {
  RunConfig c;
  c.seed = 1;
  c.vector_input = (kFixtures / "london.geojson").string();
  c.tile_dir = (kFixtures / "tiles").string();
  c.output_dir = out.string();
  return c;
}

// One generated dataset shared by the tests below.
const fs::path& generated_dataset() {
  static const fs::path root = [] {
    const fs::path p = fresh_dir("pipeline_ds");
    std::ostringstream log;
    RunConfig cfg = fixture_config(p);
    cfg.keep_layers = true;
    const GenerateSummary s = run_generate(cfg, log);
    REQUIRE(s.exit_code == kExitOk);
    return p;
  }();
  return root;
}

std::vector<std::string> files_in(const fs::path& dir) {
  std::vector<std::string> out;
  for (const auto& e : fs::directory_iterator(dir)) out.push_back(e.path().filename().string());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("scene ids and covering blocks") {
  const SceneId s = parse_scene_id("16_32744_21792");
  CHECK(s.str() == "16_32744_21792");
  CHECK(s.tiles()[3] == TileAddress{16, 32745, 21793, 256});
  CHECK_THROWS_AS(parse_scene_id("16_1"), Error);
  CHECK_THROWS_AS(parse_scene_id("a_b_c"), Error);

  const ParseReport r = parse_features(slurp(kFixtures / "london.geojson"));
  const auto scenes = scenes_covering(r.features, 16);
  REQUIRE(scenes.size() == 2);
  CHECK(scenes[0].str() == "16_32744_21792");
  CHECK(scenes[1].str() == "16_32746_21792");
  CHECK(scenes_covering(r.features, 16, 1).size() == 1);
}

TEST_CASE("config: JSON round trip, unknown keys, validation, cache dir precedence") {
  RunConfig c;
  c.seed = 9;
  c.alpha = 0.05;
  c.ink = Rgb{40, 40, 40};
  RunConfig back;
  apply_config_json(back, config_to_json(c));
  CHECK(config_to_json(back) == config_to_json(c));
  CHECK(back.ink == Rgb{40, 40, 40});
  CHECK_THROWS_AS(apply_config_json(back, R"({"no_such_key": 1})"), Error);
  CHECK_THROWS_AS(apply_config_json(back, R"({"alpha": "x"})"), Error);
  CHECK_THROWS_AS(apply_config_json(back, "{"), ParseError);

  RunConfig bad;
  bad.t_r = 1.5;
  CHECK_THROWS_AS(validate(bad), Error);
  CHECK(parse_rgb("#282828") == Rgb{40, 40, 40});
  CHECK(parse_rgb("1,2,3") == Rgb{1, 2, 3});
  CHECK(format_rgb(Rgb{1, 2, 255}) == "#0102ff");

  RunConfig cache;
  ::setenv(kCacheDirEnv, "/env/cache", 1);
  CHECK(effective_cache_dir(cache) == "/env/cache");
  cache.cache_dir = "/explicit";
  CHECK(effective_cache_dir(cache) == "/explicit");
  ::unsetenv(kCacheDirEnv);
  cache.cache_dir.clear();
  CHECK(effective_cache_dir(cache) == "tile_cache");
}

TEST_CASE("generate: two fixture scenes produce images, ground truth and a manifest") {
  const fs::path& root = generated_dataset();
  CHECK(files_in(root / "images") == std::vector<std::string>{"16_32744_21792.png", "16_32746_21792.png"});
  CHECK(files_in(root / "gt_icdar") == std::vector<std::string>{"gt_16_32744_21792.txt", "gt_16_32746_21792.txt"});
  CHECK(files_in(root / "gt_ext") == std::vector<std::string>{"16_32744_21792.txt", "16_32746_21792.txt"});
  REQUIRE(fs::exists(root / "manifest"));
  const DatasetManifest m = parse_manifest(slurp(root / "manifest"));
  CHECK(m.scenes.size() == 2);
  CHECK(m.total_regions > 10);
  CHECK(m.has_config);
  CHECK(m.config.seed == 1);
  const TileImage img = read_png(root / "images" / "16_32744_21792.png");
  CHECK(img.width() == 512);
  CHECK(img.height() == 512);

  // Every ICDAR polygon is clockwise, inside the image and non-degenerate.
  for (const auto& [id, file] : import_detections(root / "gt_icdar")) {
    CHECK(file.errors.empty());
    for (const auto& r : file.regions) {
      CHECK(polygon_area(r.polygon) > 0);
      for (const Point& p : r.polygon) {
        CHECK(p.x >= 0);
        CHECK(p.x <= 511);
        CHECK(p.y >= 0);
        CHECK(p.y <= 511);
      }
    }
  }
}

TEST_CASE("generate: same seed gives byte-identical ground truth and manifest hash") {
  const fs::path a = fresh_dir("det_a"), b = fresh_dir("det_b");
  std::ostringstream log;
  RunConfig ca = fixture_config(a), cb = fixture_config(b);
  cb.jobs = 4;
  const auto sa = run_generate(ca, log), sb = run_generate(cb, log);
  REQUIRE(sa.exit_code == kExitOk);
  REQUIRE(sb.exit_code == kExitOk);
  for (const std::string id : {"16_32744_21792", "16_32746_21792"}) {
    CHECK(slurp(a / "gt_icdar" / ("gt_" + id + ".txt")) == slurp(b / "gt_icdar" / ("gt_" + id + ".txt")));
    CHECK(slurp(a / "gt_ext" / (id + ".txt")) == slurp(b / "gt_ext" / (id + ".txt")));
    CHECK(slurp(a / "images" / (id + ".png")) == slurp(b / "images" / (id + ".png")));
  }
  CHECK(sa.manifest.hash() == sb.manifest.hash());
  CHECK(slurp(a / "manifest") == slurp(b / "manifest"));

  const fs::path c = fresh_dir("det_c");
  RunConfig cc = fixture_config(c);
  cc.seed = 2;
  const auto sc = run_generate(cc, log);
  CHECK(sc.manifest.hash() != sa.manifest.hash());
}

TEST_CASE("generate: noise is deterministic and confined to text pixels") {
  const fs::path a = fresh_dir("noise_a");
  std::ostringstream log;
  RunConfig cfg = fixture_config(a);
  cfg.noise_sigma = 25;
  const GenerationContext ctx = make_generation_context(cfg);
  const SceneId id = parse_scene_id("16_32744_21792");
  const SceneOutput one = generate_scene(ctx, id), two = generate_scene(ctx, id);
  CHECK(one.image == two.image);
  cfg.noise_sigma = 0;
  const SceneOutput clean = generate_scene(make_generation_context(cfg), id);
  const Mask text = opaque_mask(clean.colored);
  int changed = 0;
  for (int y = 0; y < 512; ++y)
    for (int x = 0; x < 512; ++x) {
      if (!text.at(x, y)) CHECK(one.image.at(x, y) == clean.image.at(x, y));
      else changed += !(one.image.at(x, y) == clean.image.at(x, y));
    }
  CHECK(changed > 100);
  CHECK(scene_seed(1, "a") == scene_seed(1, "a"));
  CHECK(scene_seed(1, "a") != scene_seed(1, "b"));
  CHECK(scene_seed(1, "a") != scene_seed(2, "a"));
}

TEST_CASE("generate: usage errors and per-scene failures") {
  std::ostringstream log;
  RunConfig no_vec = fixture_config(fresh_dir("usage"));
  no_vec.vector_input.clear();
  try {
    run_generate(no_vec, log);
    FAIL("expected usage error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Argument);
  }
  RunConfig no_seed = fixture_config(fresh_dir("usage"));
  no_seed.seed.reset();
  CHECK_THROWS_AS(run_generate(no_seed, log), Error);

  // One scene has no background tiles: it fails, the other succeeds, exit 0.
  const fs::path out = fresh_dir("partial");
  RunConfig cfg = fixture_config(out);
  const std::vector<SceneId> scenes{parse_scene_id("16_32744_21792"), parse_scene_id("16_40000_21792")};
  std::ostringstream plog;
  const GenerateSummary s = run_generate(cfg, plog, &scenes);
  CHECK(s.scenes_ok == 1);
  CHECK(s.scenes_failed == 1);
  CHECK(s.exit_code == kExitOk);
  CHECK(plog.str().find("scene=16_40000_21792 status=failed") != std::string::npos);
  const std::string last = plog.str().substr(plog.str().rfind("summary"));
  CHECK(last.rfind("summary command=generate scenes=2 ok=1 failed=1", 0) == 0);

  const std::vector<SceneId> missing{parse_scene_id("16_40000_21792")};
  CHECK(run_generate(fixture_config(fresh_dir("all_fail")), plog, &missing).exit_code == kExitPartial);
}

TEST_CASE("evaluate: ground truth against itself is 100/100/100") {
  const fs::path& root = generated_dataset();
  EvaluateOptions o;
  o.gt_dir = root;
  o.det_dir = root / "gt_icdar";
  o.report_csv = fresh_dir("eval_self") / "report.csv";
  std::ostringstream out, log;
  const EvaluateSummary s = run_evaluate(o, out, log);
  CHECK(s.exit_code == kExitOk);
  CHECK(out.str() == "All precision=100.00 recall=100.00 f1=100.00 images=2\n");
  REQUIRE(s.report.all.f1.has_value());
  CHECK(*s.report.all.f1 == doctest::Approx(1.0));
  const std::string csv = slurp(o.report_csv);
  CHECK(csv.rfind("scope,id,images,precision,recall,f1,one_to_one,splits,merges\n", 0) == 0);
  CHECK(csv.find("all,All,2,1.000000,1.000000,1.000000") != std::string::npos);
}

TEST_CASE("evaluate: empty detections, mismatched ids and the sweep table") {
  const fs::path& root = generated_dataset();
  const fs::path det = fresh_dir("eval_empty");
  std::ofstream(det / "res_16_32744_21792.txt");
  std::ofstream(det / "res_16_32746_21792.txt");
  EvaluateOptions o;
  o.gt_dir = root / "gt_icdar";
  o.det_dir = det;
  std::ostringstream out, log;
  const EvaluateSummary s = run_evaluate(o, out, log);
  CHECK_FALSE(s.report.all.precision.has_value());
  REQUIRE(s.report.all.recall.has_value());
  CHECK(*s.report.all.recall == 0.0);
  CHECK(out.str() == "All precision=NA recall=0.00 f1=0.00 images=2\n");

  const fs::path odd = fresh_dir("eval_odd");
  fs::copy_file(root / "gt_icdar" / "gt_16_32744_21792.txt", odd / "res_16_32744_21792.txt");
  std::ofstream(odd / "res_other.txt") << "0,0,5,0,5,5,0,5\n";
  o.det_dir = odd;
  o.sweep_spec = "0.1:0.9:0.1";
  o.sweep_csv = odd / "sweep.csv";
  std::ostringstream out2, log2;
  const EvaluateSummary s2 = run_evaluate(o, out2, log2);
  CHECK(s2.exit_code == kExitPartial);
  CHECK(s2.only_in_gt == std::vector<std::string>{"16_32746_21792"});
  CHECK(s2.only_in_det == std::vector<std::string>{"other"});
  CHECK(s2.report.all.images == 1);
  CHECK(log2.str().find("16_32746_21792") != std::string::npos);

  // 9x9 table plus a header row and column.
  std::istringstream table(slurp(odd / "sweep.csv"));
  std::string line;
  int rows = 0;
  while (std::getline(table, line)) {
    CHECK(std::count(line.begin(), line.end(), ',') == 9);
    ++rows;
  }
  CHECK(rows == 10);
}

TEST_CASE("sweep command on identical directories is all ones") {
  const fs::path& root = generated_dataset();
  SweepOptions o;
  o.gt_dir = root;
  o.det_dir = root / "gt_icdar";
  std::ostringstream out, log;
  int code = -1;
  const SweepTable t = run_sweep(o, out, log, &code);
  CHECK(code == kExitOk);
  CHECK(t.t_r.size() == 9);
  CHECK(t.t_p.size() == 9);
  for (double v : t.f1) CHECK(v == doctest::Approx(1.0));
}

TEST_CASE("annotate: fixture colored layer matches the golden extended ground truth") {
  const fs::path out = fresh_dir("annotate_golden");
  std::ostringstream log;
  RunConfig cfg;
  CHECK(run_annotate(kFixtures / "layers", out, cfg, log) == kExitOk);
  const std::string got = slurp(out / "gt_ext" / "16_32744_21792.txt");
  CHECK(got == slurp(kFixtures / "golden" / "16_32744_21792.txt"));
  CHECK(slurp(out / "gt_icdar" / "gt_16_32744_21792.txt") == slurp(kFixtures / "golden" / "gt_16_32744_21792.txt"));

  // The golden file itself satisfies the annotation contracts: each polygon
  // covers its label's pixels and is clockwise, and the transcriptions come
  // from the sidecar.
  const TileImage colored = read_png(kFixtures / "layers" / "16_32744_21792.png");
  const auto regions = parse_extended(slurp(kFixtures / "golden" / "16_32744_21792.txt"));
  const auto infos = parse_label_sidecar(slurp(kFixtures / "layers" / "16_32744_21792.tsv"));
  REQUIRE(regions.size() == infos.size());
  for (std::size_t i = 0; i < regions.size(); ++i) {
    CHECK(regions[i].transcription == infos[i].transcription);
    CHECK(is_clockwise(regions[i].polygon));
    const auto pixels = extract_label_pixels(colored, infos[i].color_index);
    REQUIRE_FALSE(pixels.empty());
    std::size_t inside = 0;
    for (const Pixel& p : pixels) inside += contains_inclusive(regions[i].polygon, Point{double(p.x), double(p.y)}, 0.5);
    CHECK(double(inside) / pixels.size() >= 0.99);
    CHECK(regions[i].local_height > 2);
    CHECK(regions[i].centerline.size() >= 2);
  }
}

TEST_CASE("annotate: layer without a sidecar still yields one region per colour") {
  const fs::path in = fresh_dir("annotate_bare_in");
  fs::copy_file(kFixtures / "layers" / "16_32744_21792.png", in / "x.png");
  const fs::path out = fresh_dir("annotate_bare_out");
  std::ostringstream log;
  CHECK(run_annotate(in, out, RunConfig{}, log) == kExitOk);
  const auto regions = parse_extended(slurp(out / "gt_ext" / "x.txt"));
  CHECK(regions.size() == 10);
  for (const auto& r : regions) CHECK(r.transcription.empty());
}

TEST_CASE("stats: totals match the manifest, empty dir gives zeros") {
  const fs::path& root = generated_dataset();
  std::ostringstream out;
  const DatasetManifest m = run_stats(root, out);
  const DatasetManifest written = parse_manifest(slurp(root / "manifest"));
  CHECK(m.total_regions == written.total_regions);
  CHECK(m.scenes.size() == written.scenes.size());
  CHECK(m.hash() == written.hash());
  CHECK(parse_manifest(out.str()).total_regions == m.total_regions);

  std::ostringstream empty_out;
  const DatasetManifest z = run_stats(fresh_dir("stats_zero"), empty_out);
  CHECK(z.total_regions == 0);
  CHECK(parse_manifest(empty_out.str()).scenes.empty());
}

TEST_CASE("fetch-tiles fills the cache so it can serve as a tile dir") {
  httplib::Server server;
  int hits = 0;
  server.Get(R"(/(\d+)/(\d+)/(\d+)\.png)", [&](const httplib::Request& req, httplib::Response& res) {
    ++hits;
    const fs::path p = kFixtures / "tiles" / req.matches[1].str() / req.matches[2].str() / (req.matches[3].str() + ".png");
    if (!fs::exists(p)) {
      res.status = 404;
      return;
    }
    res.set_content(slurp(p), "image/png");
  });
  const int port = server.bind_to_any_port("127.0.0.1");
  std::thread th([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  const fs::path cache = fresh_dir("fetch_cache");
  RunConfig cfg;
  cfg.vector_input = (kFixtures / "london.geojson").string();
  cfg.tile_template = "http://127.0.0.1:" + std::to_string(port) + "/{z}/{x}/{y}.png";
  cfg.cache_dir = cache.string();
  std::ostringstream log;
  CHECK(run_fetch_tiles(cfg, log) == kExitOk);
  CHECK(hits == 8);
  CHECK(run_fetch_tiles(cfg, log) == kExitOk);
  CHECK(hits == 8);

  // Generation through the URL template (cache hits only) equals the local-dir run.
  const fs::path out = fresh_dir("fetch_gen");
  RunConfig gen = fixture_config(out);
  gen.tile_dir.clear();
  gen.tile_template = cfg.tile_template;
  gen.cache_dir = cache.string();
  CHECK(run_generate(gen, log).exit_code == kExitOk);
  CHECK(hits == 8);
  const fs::path& ref = generated_dataset();
  CHECK(slurp(out / "gt_ext" / "16_32744_21792.txt") == slurp(ref / "gt_ext" / "16_32744_21792.txt"));
  server.stop();
  th.join();
}
