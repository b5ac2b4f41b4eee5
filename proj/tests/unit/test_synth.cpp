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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <vector>

#include <doctest.h>

#include "glottkit/error.hpp"
#include "glottkit/features.hpp"
#include "glottkit/synth.hpp"
#include "oracles.hpp"

using namespace glottkit;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

fs::path scratch_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("glottkit_test_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("impulse period and validation") {
  SynthSpec spec;
  spec.f0 = 220.5;
  const auto s = synthesize(spec);
  CHECK(s.period_samples == 100);
  CHECK(s.audio.samples.size() == 22050);
  CHECK(s.audio.sample_rate == 22050);
  double peak = 0.0;
  for (double v : s.clean) peak = std::max(peak, std::abs(v));
  CHECK(peak == doctest::Approx(0.5));
  for (std::size_t n = 0; n < s.excitation.size(); ++n)
    CHECK((s.excitation[n] != 0.0) == (n % 100 == s.pulse_onset));

  spec.f0 = 0.0;
  CHECK_THROWS_AS(synthesize(spec), InvalidArgument);
  spec = {};
  spec.params.fst = 20000.0;
  CHECK_THROWS_AS(synthesize(spec), InvalidArgument);
  spec = {};
  spec.lip_d = 1.0;
  CHECK_THROWS_AS(synthesize(spec), InvalidArgument);
}

TEST_CASE("synthesis matches an independent chain and the lip filter inverts") {
  SynthSpec spec;
  spec.noise_floor_db = -INFINITY;
  spec.seed = 42;
  const auto s = synthesize(spec);
  CHECK(s.audio.samples == s.clean);

  const std::size_t trim = 1103, total = 22050 + trim;
  std::mt19937_64 rng(spec.seed);
  const std::size_t onset = rng() % 100;
  std::vector<double> exc(total, 0.0);
  for (std::size_t n = onset; n < total; n += 100) exc[n] = 1.0;
  const auto flow_speech =
      oracle::ar_filter(s.vocal_tract.polynomial.coefficients(),
                        oracle::ar_filter(s.glottis.polynomial.coefficients(), exc));
  std::vector<double> out(total);
  for (std::size_t n = 0; n < total; ++n)
    out[n] = flow_speech[n] - spec.lip_d * (n > 0 ? flow_speech[n - 1] : 0.0);

  const auto back = integrate(out, spec.lip_d);
  double scale = 0.0;
  for (double v : flow_speech) scale = std::max(scale, std::abs(v));
  for (std::size_t n = 0; n < total; ++n) CHECK(std::abs(back[n] - flow_speech[n]) <= 1e-9 * scale);
  for (std::size_t n = 0; n < s.clean.size(); ++n)
    CHECK(std::abs(s.clean[n] - s.scale * out[n + trim]) < 1e-12);
}

TEST_CASE("noise floor level") {
  SynthSpec spec;
  spec.seed = 6;
  const auto s = synthesize(spec);
  double ss = 0.0;
  for (std::size_t n = 0; n < s.clean.size(); ++n)
    ss += (s.audio.samples[n] - s.clean[n]) * (s.audio.samples[n] - s.clean[n]);
  CHECK(std::sqrt(ss / s.clean.size()) == doctest::Approx(1e-3).epsilon(0.05));
}

TEST_CASE("filters from parameters") {
  const auto g = glottis_from_params({150, 80, 800}, 22050);
  CHECK(g.order() == 3);
  CHECK(is_stable(g.polynomial));
  const auto v = vocal_tract_from_formants(neutral_vowel_formants(), 22050);
  CHECK(v.order() == 10);
  CHECK(is_stable(v.polynomial));
}

TEST_CASE("effort corpus layout, determinism and overrides") {
  const auto dir_a = scratch_dir("corpus_a"), dir_b = scratch_dir("corpus_b");
  SynthSpec base;
  base.duration_s = 0.2;
  CorpusOptions opts;
  opts.n_per_class = 4;
  opts.seed = 11;
  const auto m = make_effort_corpus(base, default_effort_classes(), opts, dir_a, "meta");
  CHECK(m.rows.size() == 12);
  CHECK(fs::exists(dir_a / "manifest.csv"));
  std::size_t wavs = 0;
  for (const auto& e : fs::directory_iterator(dir_a)) wavs += e.path().extension() == ".wav";
  CHECK(wavs == 12);

  make_effort_corpus(base, default_effort_classes(), opts, dir_b, "meta");
  for (const auto& e : fs::directory_iterator(dir_a))
    CHECK(slurp(e.path()) == slurp(dir_b / e.path().filename()));

  std::vector<double> soft_fst, loud_fst;
  for (const auto& r : m.rows) {
    REQUIRE(r.ground_truth);
    CHECK(fs::exists(r.path));
    (r.effort == Effort::kSoft ? soft_fst : loud_fst).push_back(r.ground_truth->fst);
  }
  CHECK(median(soft_fst) < median(loud_fst));

  auto classes = default_effort_classes();
  classes[2].params.fst = 3333.0;
  opts.jitter = 0.0;
  const auto fixed = make_effort_corpus(base, classes, opts, scratch_dir("corpus_c"));
  for (const auto& r : fixed.rows) {
    const auto& want = classes[static_cast<std::size_t>(r.effort)].params;
    CHECK(r.ground_truth->fg == want.fg);
    CHECK(r.ground_truth->bg == want.bg);
    CHECK(r.ground_truth->fst == want.fst);
  }

  opts.n_per_class = 0;
  CHECK_THROWS_AS(make_effort_corpus(base, classes, opts, scratch_dir("corpus_d")), InvalidArgument);
  opts.n_per_class = 2;
  opts.jitter = -1.0;
  CHECK_THROWS_AS(make_effort_corpus(base, classes, opts, scratch_dir("corpus_e")), InvalidArgument);
  for (const char* d : {"corpus_a", "corpus_b", "corpus_c", "corpus_d", "corpus_e"}) scratch_dir(d);
}
