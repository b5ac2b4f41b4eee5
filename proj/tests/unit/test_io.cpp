// Copyright 2026 The glottkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <filesystem>
#include <fstream>
#include <string>

#include <doctest.h>

#include "glottkit/config.hpp"
#include "glottkit/error.hpp"
#include "glottkit/manifest.hpp"

using namespace glottkit;
namespace fs = std::filesystem;

namespace {

fs::path write_file(const std::string& name, const std::string& text) {
  const auto dir = fs::temp_directory_path() / "glottkit_test_io";
  fs::create_directories(dir);
  const auto p = dir / name;
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST_CASE("manifest read with comments, quotes and relative paths") {
  const auto p = write_file("m1.csv",
                            "# generated\n"
                            "path,vowel,effort,speaker,fg_true,bg_true,fst_true\n"
                            "a.wav,a,soft,s1,120,60,500\n"
                            "\"sub dir/b,1.wav\",\"i\",loud,s2,200,160,2500\n");
  const auto m = read_manifest(p);
  REQUIRE(m.rows.size() == 2);
  CHECK(m.rows[0].path == p.parent_path() / "a.wav");
  CHECK(m.rows[1].path == p.parent_path() / "sub dir/b,1.wav");
  CHECK(m.rows[1].effort == Effort::kLoud);
  REQUIRE(m.rows[0].ground_truth);
  CHECK(m.rows[0].ground_truth->fst == 500.0);

  const auto plain = read_manifest(write_file("m2.csv", "path,vowel,effort,speaker\n/x.wav,a,medium,s\n"));
  CHECK_FALSE(plain.rows[0].ground_truth);
  CHECK(plain.rows[0].path == "/x.wav");
}

TEST_CASE("manifest errors") {
  CHECK_THROWS_AS(read_manifest(write_file("bad1.csv", "path,vowel,effort,speaker\na.wav,a,shout,s\n")),
                  InvalidArgument);
  CHECK_THROWS_AS(read_manifest(write_file("bad2.csv", "file,vowel,effort\na.wav,a,soft\n")),
                  InvalidArgument);
  CHECK_THROWS_AS(read_manifest(write_file("bad3.csv", "path,vowel,effort,speaker\na.wav,a\n")),
                  InvalidArgument);
  CHECK_THROWS_AS(read_manifest("/nonexistent/manifest.csv"), IoError);
  CHECK_THROWS_AS(effort_from_string("whisper"), InvalidArgument);
  CHECK(to_string(Effort::kMedium) == "medium");

  CorpusManifest dup;
  dup.rows = {{"a.wav", "a", Effort::kSoft, "s", {}}, {"a.wav", "a", Effort::kSoft, "s", {}}};
  CHECK_THROWS_AS(validate_manifest(dup), InvalidArgument);
  CorpusManifest thin;
  thin.rows = {{"a.wav", "a", Effort::kSoft, "s", {}}, {"b.wav", "a", Effort::kSoft, "s", {}},
               {"c.wav", "a", Effort::kLoud, "s", {}}};
  CHECK_THROWS_AS(validate_manifest(thin), InvalidArgument);
  thin.rows.push_back({"d.wav", "a", Effort::kLoud, "s", {}});
  CHECK_NOTHROW(validate_manifest(thin));
  CHECK_THROWS_AS(validate_manifest(CorpusManifest{}), InvalidArgument);
}

TEST_CASE("manifest write and read round-trip") {
  const auto dir = fs::temp_directory_path() / "glottkit_test_io";
  CorpusManifest m;
  m.rows = {{dir / "x.wav", "schwa", Effort::kSoft, "synth", GlottalParams{123.456789012345, 61, 501}},
            {dir / "y,z.wav", "schwa", Effort::kLoud, "synth", GlottalParams{201, 159, 2499.5}}};
  write_manifest(dir / "rt.csv", m, "glottkit test");
  std::ifstream in(dir / "rt.csv");
  std::string first;
  std::getline(in, first);
  CHECK(first == "# glottkit test");
  const auto back = read_manifest(dir / "rt.csv");
  REQUIRE(back.rows.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(back.rows[i].path == m.rows[i].path);
    CHECK(back.rows[i].effort == m.rows[i].effort);
    CHECK(back.rows[i].ground_truth->fg == m.rows[i].ground_truth->fg);
    CHECK(back.rows[i].ground_truth->fst == m.rows[i].ground_truth->fst);
  }
}

TEST_CASE("config parsing") {
  const auto cfg = parse_config("# comment\nlip_d = 0.95\nvt_order=20  # trailing\n\nframe_len_ms = 25\n");
  CHECK(cfg.lip_d == 0.95);
  CHECK(cfg.vt_order == 20);
  CHECK(cfg.frame_len_ms == 25.0);
  CHECK_FALSE(parse_config("vt_order = auto").vt_order);
  CHECK_THROWS_AS(parse_config("lpc_order = 3"), InvalidArgument);
  CHECK_THROWS_AS(parse_config("lip_d = high"), InvalidArgument);
  CHECK_THROWS_AS(parse_config("lip_d 0.9"), InvalidArgument);
  CHECK_THROWS_AS(parse_config("lip_d = 1.5"), InvalidArgument);
  CHECK(parse_config(format_config(cfg)).lip_d == 0.95);
  CHECK(load_config(write_file("c.cfg", "hop_fraction = 0.25\n")).hop_fraction == 0.25);
  CHECK_THROWS_AS(load_config("/nonexistent.cfg"), IoError);
}

TEST_CASE("config hash and metadata") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
  const AnalysisConfig a;
  AnalysisConfig b;
  b.lip_d = 0.95;
  CHECK(config_hash(a).size() == 16);
  CHECK(config_hash(a) == config_hash(AnalysisConfig{}));
  CHECK(config_hash(a) != config_hash(b));
  CHECK(metadata_line(a, 7) == "glottkit " + std::string(kVersion) + " config_hash=" + config_hash(a) + " seed=7");
}
