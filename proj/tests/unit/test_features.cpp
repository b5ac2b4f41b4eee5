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
#include <numbers>
#include <vector>

#include <doctest.h>

#include "glottkit/error.hpp"
#include "glottkit/features.hpp"
#include "glottkit/synth.hpp"
#include "oracles.hpp"

using namespace glottkit;
using std::numbers::pi;

namespace {

constexpr double kFs = 22050.0;

std::vector<double> sines(const std::vector<std::pair<double, double>>& parts, std::size_t n) {
  std::vector<double> x(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& [f, a] : parts) x[i] += a * std::sin(2.0 * pi * f * i / kFs);
  return x;
}

HarmonicSeries series_db(std::vector<double> freqs, std::vector<double> db) {
  return HarmonicSeries{std::move(freqs), std::move(db)};
}

LpcModel model_from(const std::vector<std::complex<double>>& poles) {
  LpcModel m;
  m.polynomial = PolynomialFilter(oracle::expand(poles));
  return m;
}

}  // namespace

TEST_CASE("matched-z mappings") {
  CHECK(pole_angle_to_hz(2.0 * pi * 200.0 / kFs, kFs) == doctest::Approx(200.0));
  CHECK(pole_radius_to_bandwidth_hz(1.0, kFs) == 0.0);
  CHECK(pole_radius_to_bandwidth_hz(0.99, kFs) == doctest::Approx(-kFs * std::log(0.99) / pi));
  CHECK(pole_radius_to_bandwidth_hz(0.99, kFs) == doctest::Approx(70.5).epsilon(1e-3));
  CHECK(real_pole_to_cutoff_hz(0.9, kFs) == doctest::Approx(-kFs * std::log(0.9) / (2.0 * pi)));
  CHECK(real_pole_to_cutoff_hz(0.9, kFs) == doctest::Approx(369.8).epsilon(1e-3));
}

TEST_CASE("glottal_params_from_poles") {
  const auto a = std::polar(0.99, 2.0 * pi * 200.0 / kFs);
  const auto p = glottal_params_from_poles(model_from({a, std::conj(a), 0.9}), kFs);
  CHECK(p.fg == doctest::Approx(200.0));
  CHECK(p.bg == doctest::Approx(-kFs * std::log(0.99) / pi));
  CHECK(p.fst == doctest::Approx(-kFs * std::log(0.9) / (2.0 * pi)));
  CHECK_FALSE(p.tilt_degenerate);
  CHECK_FALSE(p.formant_from_real_poles);

  const auto neg = glottal_params_from_poles(model_from({a, std::conj(a), -0.3}), kFs);
  CHECK(neg.tilt_degenerate);
  CHECK(neg.fst == doctest::Approx(kFs / 2.0));

  const auto real = glottal_params_from_poles(model_from({0.95, 0.9, 0.5}), kFs);
  CHECK(real.formant_from_real_poles);
  const double c1 = real_pole_to_cutoff_hz(0.95, kFs), c2 = real_pole_to_cutoff_hz(0.9, kFs);
  CHECK(real.fg == doctest::Approx(std::sqrt(c1 * c2)));
  CHECK(real.bg == doctest::Approx(c1 + c2));
  CHECK(real.fst == doctest::Approx(real_pole_to_cutoff_hz(0.5, kFs)));

  CHECK_THROWS_AS(glottal_params_from_poles(model_from({0.5}), kFs), InvalidArgument);
}

TEST_CASE("glottis_from_params inverts the mapping") {
  for (const GlottalParams& truth : {GlottalParams{150, 80, 800}, GlottalParams{120, 60, 500},
                                     GlottalParams{200, 160, 2500}, GlottalParams{90, 300, 6000}}) {
    const auto back = glottal_params_from_poles(glottis_from_params(truth, kFs), kFs);
    CHECK(std::abs(back.fg - truth.fg) < 1e-9 * truth.fg);
    CHECK(std::abs(back.bg - truth.bg) < 1e-9 * truth.bg);
    CHECK(std::abs(back.fst - truth.fst) < 1e-9 * truth.fst);
  }
  const auto near_nyq = cubic_roots(glottis_from_params({150, 80, kFs / 2 - 1e-6}, kFs).polynomial);
  double real_pole = 0.0;
  for (const auto& z : near_nyq.poles)
    if (z.imag() == 0.0) real_pole = z.real();
  CHECK(real_pole == doctest::Approx(std::exp(-pi)).epsilon(1e-6));
  const auto narrow = cubic_roots(glottis_from_params({150, 1e-6, 800}, kFs).polynomial);
  double max_mag = 0.0;
  for (const auto& z : narrow.poles) max_mag = std::max(max_mag, std::abs(z));
  CHECK(max_mag == doctest::Approx(1.0).epsilon(1e-6));
  CHECK_THROWS_AS(glottis_from_params({0, 80, 800}, kFs), InvalidArgument);
  CHECK_THROWS_AS(glottis_from_params({150, 80, kFs}, kFs), InvalidArgument);
}

TEST_CASE("h1h2, hrf and spectral_tilt on constructed series") {
  CHECK(h1h2(series_db({100, 200}, {-10, -16})) == doctest::Approx(6.0).epsilon(0.1 / 6.0));
  CHECK(std::abs(h1h2(series_db({100, 200, 300}, {-3, -3, -9}))) < 0.1);

  CHECK(std::abs(hrf(series_db({100, 200}, {0, 0}))) < 0.1);
  const double half = 20.0 * std::log10(0.5);
  CHECK(std::abs(hrf(series_db({100, 200, 300}, {0, half, half}))) < 0.1);

  std::vector<double> f, line, flat;
  for (int k = 1; k <= 10; ++k) {
    f.push_back(100.0 * k);
    line.push_back(-20.0 * std::log10(k));
    flat.push_back(-7.0);
  }
  CHECK(std::abs(spectral_tilt(series_db(f, line)) + 20.0) < 0.5);
  CHECK(std::abs(spectral_tilt(series_db(f, flat))) < 0.5);

  CHECK_THROWS_AS(h1h2(series_db({100}, {0})), InvalidArgument);
  CHECK_THROWS_AS(hrf(series_db({100}, {0})), InvalidArgument);
  CHECK_THROWS_AS(spectral_tilt(series_db({100, 200}, {0, -6})), InvalidArgument);
}

TEST_CASE("harmonic_amplitudes on sinusoids") {
  const auto two = harmonic_amplitudes(sines({{200, 1.0}, {400, 0.5}}, 8192), 200, kFs);
  REQUIRE(two.size() >= 2);
  CHECK(two.frequencies_hz[0] == doctest::Approx(200).epsilon(0.01));
  CHECK(std::abs(h1h2(two) - 20.0 * std::log10(2.0)) < 0.1);

  const auto one = harmonic_amplitudes(sines({{200, 1.0}}, 8192), 200, kFs);
  CHECK(one.amplitudes_db[0] - *std::max_element(one.amplitudes_db.begin() + 1, one.amplitudes_db.end()) > 40.0);
  CHECK_THROWS_AS(harmonic_amplitudes(sines({{3000, 1.0}}, 8192), 3000, kFs), InvalidArgument);
  CHECK_THROWS_AS(harmonic_amplitudes(std::vector<double>(100, 0.0), 200, kFs), InvalidArgument);
  CHECK_THROWS_AS(harmonic_amplitudes(std::vector<double>(8192, 0.0), 0, kFs), InvalidArgument);
}

TEST_CASE("synthetic derivative with Fg at f0 has H1 as the strongest harmonic") {
  SynthSpec spec;
  spec.f0 = 150.0;
  spec.params = {150.0, 80.0, 800.0};
  spec.noise_floor_db = -INFINITY;
  const auto s = synthesize(spec);
  const auto h = harmonic_amplitudes(s.glottal_flow_derivative, 22050.0 / s.period_samples, kFs);
  CHECK(std::max_element(h.amplitudes_db.begin(), h.amplitudes_db.end()) == h.amplitudes_db.begin());
}

TEST_CASE("estimate_f0") {
  AudioBuffer sine{sines({{220, 0.5}}, 22050), 22050};
  CHECK(std::abs(estimate_f0(sine).median_hz - 220.0) <= 1.0);

  SynthSpec spec;
  spec.seed = 4;
  const auto s = synthesize(spec);
  REQUIRE(s.period_samples == 100);
  const auto track = estimate_f0(s.audio);
  CHECK(std::abs(track.median_hz - 220.5) <= 2.0);
  CHECK(track.times_s.size() == track.f0_hz.size());

  AudioBuffer noise{oracle::gaussian_noise(22050, 5, 0.1), 22050};
  CHECK_THROWS_AS(estimate_f0(noise), NoVoicedFrames);
}

TEST_CASE("median") {
  CHECK(median({3, 1, 2}) == 2.0);
  CHECK(median({4, 1, 2, 3}) == 2.5);
  CHECK_THROWS_AS(median({}), InvalidArgument);
}
