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

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "common/error.hpp"
#include "common/text.hpp"
#include "dataset/dataset.hpp"
#include "dataset/icdar.hpp"
#include "support/fixtures.hpp"

using namespace mapsynth;
using mapsynth::testing::Gen;
namespace fs = std::filesystem;

namespace {

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

AnnotationRecord record(Ring polygon, std::string text, std::vector<Point> centerline = {{0, 0}, {1, 1}}, double h = 3) {
  AnnotationRecord r;
  r.polygon = std::move(polygon);
  r.transcription = std::move(text);
  r.centerline.points = std::move(centerline);
  r.local_height = h;
  return r;
}

Ring random_polygon(Gen& gen, int n) {
  Ring r;
  for (int i = 0; i < n; ++i) r.push_back({double(gen.uniform_int(0, 511)), double(gen.uniform_int(0, 511))});
  return r;
}

std::string random_text(Gen& gen) {
  static const std::vector<std::string> pieces{"St", ",", " ", "\"", "Ab", "12", "é", "-", "'", "x", "3.5", "\n", "中"};
  std::string s;
  const int n = gen.uniform_int(0, 5);
  for (int i = 0; i < n; ++i) s += pieces[gen.uniform_int(0, int(pieces.size()) - 1)];
  return s;
}

}  // namespace

TEST_CASE("ICDAR line: square example and quoting") {
  const Ring sq{{10, 10}, {60, 10}, {60, 40}, {10, 40}};
  CHECK(format_icdar_line(sq, "AB") == "10,10,60,10,60,40,10,40,AB");
  const std::string quoted = format_icdar_line(sq, "St, Pancras");
  CHECK(quoted == "10,10,60,10,60,40,10,40,\"St, Pancras\"");
  CHECK(format_icdar_line(sq, "say \"hi\"") == "10,10,60,10,60,40,10,40,\"say \"\"hi\"\"\"");
  CHECK(format_icdar_line(sq, "42") == "10,10,60,10,60,40,10,40,\"42\"");
  CHECK(format_icdar_line(sq, "") == "10,10,60,10,60,40,10,40,\"\"");
}

TEST_CASE("round_coordinate is half away from zero") {
  CHECK(round_coordinate(2.5) == 3);
  CHECK(round_coordinate(-2.5) == -3);
  CHECK(round_coordinate(2.4999) == 2);
  CHECK(round_coordinate(-0.4) == 0);
}

TEST_CASE("parse_icdar: quadrangle, orientation, errors") {
  const std::string text =
      "\xEF\xBB\xBF"
      "10,10,60,10,60,40,10,40,AB\r\n"
      "10,10,10,40,60,40,60,10,ccw\n"
      "1,2,3,4,5\n"
      "1,2,3,4,5,6,\"St, Pancras\"\n"
      "garbage\n"
      "0,0,4,0,0,4,4,4,bow\n"
      "5,5,9,5,9,9\n";
  const IcdarFile f = parse_icdar(text, "gt_x.txt");
  REQUIRE(f.regions.size() == 5);
  CHECK(f.regions[0].polygon == Ring{{10, 10}, {60, 10}, {60, 40}, {10, 40}});
  CHECK(f.regions[0].transcription == "AB");
  CHECK(is_clockwise(f.regions[1].polygon));
  CHECK(f.regions[1].polygon.size() == 4);
  CHECK(f.regions[2].transcription == "St, Pancras");
  CHECK(f.regions[3].self_intersecting);
  CHECK_FALSE(f.regions[4].has_transcription);
  REQUIRE(f.errors.size() == 2);
  CHECK(f.errors[0].line == 3);
  CHECK(f.errors[0].file == "gt_x.txt");
  CHECK(f.errors[1].line == 5);
}

TEST_CASE("ICDAR export -> import round trip preserves polygons and text") {
  Gen gen(31);
  for (int iter = 0; iter < 50; ++iter) {
    SceneRecord scene;
    scene.scene_id = "s";
    std::vector<std::pair<Ring, std::string>> expected;
    const int n = gen.uniform_int(0, 6);
    for (int i = 0; i < n; ++i) {
      Ring r = random_polygon(gen, gen.uniform_int(3, 9));
      if (std::abs(polygon_area(r)) < 1) continue;
      make_clockwise(r);
      const std::string t = random_text(gen);
      scene.annotations.push_back(record(r, t));
      expected.push_back({r, t});
    }
    const IcdarFile f = parse_icdar(format_icdar_gt(scene));
    CHECK(f.errors.empty());
    REQUIRE(f.regions.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (!f.regions[i].self_intersecting) CHECK(f.regions[i].polygon == expected[i].first);
      CHECK(f.regions[i].transcription == expected[i].second);
    }
  }
}

TEST_CASE("export_icdar_gt: clockwise output, clamping, unwritable path") {
  SceneRecord scene;
  scene.scene_id = "a";
  Ring ccw{{10, 10}, {10, 40}, {60, 40}, {60, 10}};
  scene.annotations.push_back(record(ccw, "X"));
  scene.annotations.push_back(record(Ring{{-3, 5}, {520, 5}, {520, 30}, {-3, 30}}, "Wide"));
  const fs::path dir = fresh_dir("icdar_export");
  export_icdar_gt(scene, dir / "gt_a.txt");
  const IcdarFile f = parse_icdar(slurp(dir / "gt_a.txt"));
  REQUIRE(f.regions.size() == 2);
  CHECK(is_clockwise(f.regions[0].polygon));
  for (const Point& p : f.regions[1].polygon) {
    CHECK(p.x >= 0);
    CHECK(p.x <= 511);
  }
  std::ofstream(dir / "blocker") << "x";
  try {
    export_icdar_gt(scene, dir / "blocker" / "gt_a.txt");
    FAIL("expected Io");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Io);
  }
}

TEST_CASE("import_detections keys by image id and collects errors") {
  const fs::path dir = fresh_dir("import");
  std::ofstream(dir / "res_img1.txt") << "0,0,10,0,10,10,0,10\n";
  std::ofstream(dir / "gt_img2.txt") << "0,0,10,0,10,10,0,10,word\n1,2,3\n";
  std::ofstream(dir / "notes.md") << "ignored";
  const auto m = import_detections(dir);
  REQUIRE(m.size() == 2);
  CHECK(m.at("img1").regions.size() == 1);
  CHECK(m.at("img2").errors.size() == 1);
  CHECK(image_id_from_file("gt_16_1_2.txt") == "16_1_2");
  CHECK(image_id_from_file("plain.txt") == "plain");
  CHECK_THROWS_AS(import_detections(dir / "missing"), Error);
}

TEST_CASE("extended format: empty scene, schema and byte-identical round trip") {
  SceneRecord empty;
  empty.scene_id = "e";
  const std::string e = format_extended(empty);
  CHECK(parse_extended(e).empty());
  CHECK(e.find("regions: 0") != std::string::npos);

  Gen gen(17);
  SceneRecord scene;
  scene.scene_id = "r";
  for (int i = 0; i < 12; ++i) {
    std::vector<Point> cl;
    for (int k = 0; k < gen.uniform_int(2, 8); ++k) cl.push_back({gen.uniform(0, 512), gen.uniform(0, 512)});
    AnnotationRecord r = record(random_polygon(gen, 4), random_text(gen), cl, gen.uniform(0, 40));
    r.flags.multi_component = gen.coin();
    r.flags.self_intersecting = gen.coin();
    r.flags.overflow = gen.coin();
    scene.annotations.push_back(r);
  }
  const std::string first = format_extended(scene);
  const auto regions = parse_extended(first);
  REQUIRE(regions.size() == 12);
  CHECK(format_extended(regions) == first);
  for (std::size_t i = 0; i < regions.size(); ++i) {
    CHECK(regions[i].transcription == scene.annotations[i].transcription);
    CHECK(regions[i].flags.overflow == scene.annotations[i].flags.overflow);
    CHECK(regions[i].centerline.size() == scene.annotations[i].centerline.points.size());
  }

  // Schema: inside every region block the keys are exactly these five.
  std::istringstream in(first);
  std::string line;
  std::set<std::string> keys;
  int blocks = 0;
  bool inside = false;
  while (std::getline(in, line)) {
    if (line == "region") {
      inside = true;
      keys.clear();
    } else if (line == "end") {
      CHECK(keys == std::set<std::string>{"polygon", "centerline", "local_height", "transcription", "flags"});
      inside = false;
      ++blocks;
    } else if (inside) {
      keys.insert(line.substr(0, line.find(':')));
    }
  }
  CHECK(blocks == 12);
}

TEST_CASE("extended format: parse errors carry an offset") {
  const std::string bad = "mapsynth-gt 1\nregions: 1\n\nregion\npolygon: 1 2 3\n";
  try {
    parse_extended(bad);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.offset() > 0);
    CHECK(e.offset() <= bad.size());
  }
  CHECK_THROWS_AS(parse_extended("not a gt file\n"), ParseError);
}

TEST_CASE("manifest: totals, round trip and hash") {
  const DatasetManifest m = make_manifest({{"c", 2, ""}, {"a", 5, ""}, {"b", 0, ""}}, nullptr);
  CHECK(m.total_regions == 7);
  CHECK(m.scenes.front().scene_id == "a");
  const std::string text = format_manifest(m);
  const DatasetManifest back = parse_manifest(text);
  CHECK(back.total_regions == 7);
  CHECK(back.hash() == m.hash());
  CHECK(format_manifest(back) == text);

  auto j = nlohmann::json::parse(text);
  j["total_regions"] = 8;
  CHECK_THROWS_AS(parse_manifest(j.dump()), Error);

  ConfigSnapshot cfg;
  cfg.seed = 3;
  cfg.font_set_hash = "abc";
  const DatasetManifest with = make_manifest({{"a", 1, ""}}, &cfg);
  const DatasetManifest back2 = parse_manifest(format_manifest(with));
  CHECK(back2.has_config);
  CHECK(back2.config.seed == 3);
  CHECK(back2.config.font_set_hash == "abc");
  cfg.seed = 4;
  CHECK(make_manifest({{"a", 1, ""}}, &cfg).hash() != with.hash());
}

TEST_CASE("compute_stats: empty, recount from files, config preserved") {
  const fs::path empty = fresh_dir("stats_empty");
  const DatasetManifest z = compute_stats(empty);
  CHECK(z.scenes.empty());
  CHECK(z.total_regions == 0);
  CHECK(parse_manifest(format_manifest(z)).total_regions == 0);
  CHECK(compute_stats(empty / "nope").total_regions == 0);

  const fs::path root = fresh_dir("stats_three");
  const DatasetLayout layout{root};
  Gen gen(2);
  int k = 0;
  for (int n : {5, 0, 2}) {
    SceneRecord s;
    s.scene_id = "16_0_" + std::to_string(k++);
    for (int i = 0; i < n; ++i) s.annotations.push_back(record(Ring{{1, 1}, {9, 1}, {9, 9}, {1, 9}}, "T"));
    export_extended(s, layout.extended(s.scene_id));
    export_icdar_gt(s, layout.icdar(s.scene_id));
  }
  ConfigSnapshot cfg;
  cfg.seed = 11;
  std::ofstream(layout.manifest()) << format_manifest(make_manifest({}, &cfg));
  const DatasetManifest m = compute_stats(root);
  CHECK(m.scenes.size() == 3);
  CHECK(m.total_regions == 7);
  CHECK(m.has_config);
  CHECK(m.config.seed == 11);
  CHECK(compute_stats(root).hash() == m.hash());
}

TEST_CASE("clamp_to_image") {
  const Ring r{{-1, -2}, {600, 3}, {5.5, 700}};
  const Ring c = clamp_to_image(r, 512, 512);
  CHECK(c == Ring{{0, 0}, {511, 3}, {5.5, 511}});
}

TEST_CASE("parse_icdar: quoted line breaks stay in one record") {
  const std::string text = "0,0,9,0,9,9,0,9,\"two\nlines\"\n1,2\n0,0,9,0,9,9,\"open\n0,0,5,0,5,5,ok\n";
  const IcdarFile f = parse_icdar(text);
  REQUIRE(f.regions.size() == 2);
  CHECK(f.regions[0].transcription == "two\nlines");
  CHECK(f.regions[1].transcription == "ok");
  REQUIRE(f.errors.size() == 2);
  CHECK(f.errors[0].line == 3);
  CHECK(f.errors[1].line == 4);
}
