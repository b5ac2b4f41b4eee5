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

#include <cmath>
#include <numbers>
#include <vector>

#include <doctest.h>

#include "glottkit/error.hpp"
#include "glottkit/lpc.hpp"
#include "glottkit/signal.hpp"
#include "oracles.hpp"

using namespace glottkit;

namespace {

std::vector<double> impulse(std::size_t n) {
  std::vector<double> x(n, 0.0);
  x[0] = 1.0;
  return x;
}

// Averaged Hann periodogram at one frequency, by direct DFT.
double welch_db(const std::vector<double>& x, double omega, std::size_t seg) {
  const auto w = make_window(Window::kHann, seg);
  double wsum = 0.0;
  for (double v : w) wsum += v * v;
  double acc = 0.0;
  std::size_t count = 0;
  for (std::size_t start = 0; start + seg <= x.size(); start += seg / 2, ++count) {
    std::complex<double> s = 0.0;
    for (std::size_t n = 0; n < seg; ++n)
      s += w[n] * x[start + n] * std::polar(1.0, -omega * static_cast<double>(n));
    acc += std::norm(s) / wsum;
  }
  return 10.0 * std::log10(acc / static_cast<double>(count));
}

}  // namespace

TEST_CASE("frame_signal offsets and windows") {
  AudioBuffer buf{std::vector<double>(100, 0.0), 1000};
  for (std::size_t i = 0; i < 100; ++i) buf.samples[i] = static_cast<double>(i);
  const auto frames = frame_signal(buf, 40, 20, Window::kRectangular);
  REQUIRE(frames.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(frames[i].start_index == 20 * i);
    CHECK(frames[i].samples.front() == doctest::Approx(20.0 * i));
  }

  AudioBuffer ones{std::vector<double>(64, 1.0), 1000};
  const auto hann = frame_signal(ones, 32, 16, Window::kHann);
  const auto w = make_window(Window::kHann, 32);
  CHECK(std::abs(hann[0].samples[0]) < 1e-12);
  for (std::size_t i = 0; i < 32; ++i) CHECK(hann[1].samples[i] == doctest::Approx(w[i]));
  CHECK(hann[0].window == Window::kHann);

  CHECK_THROWS_AS(frame_signal(buf, 200, 10, Window::kHann), InvalidArgument);
  CHECK_THROWS_AS(frame_signal(buf, 40, 0, Window::kHann), InvalidArgument);
  CHECK_THROWS_AS(frame_signal(buf, 40, 41, Window::kHann), InvalidArgument);
  CHECK(window_from_string("hann") == Window::kHann);
  CHECK(to_string(Window::kRectangular) == "rectangular");
  CHECK_THROWS_AS(window_from_string("kaiser"), InvalidArgument);
}

TEST_CASE("polynomial filters reject non-monic or non-finite coefficients") {
  CHECK_THROWS_AS(PolynomialFilter({2.0, 1.0}), InvalidArgument);
  CHECK_THROWS_AS(PolynomialFilter({1.0, NAN}), InvalidArgument);
  const auto p = PolynomialFilter({1.0, -0.5}) * PolynomialFilter({1.0, 0.25});
  REQUIRE(p.order() == 2);
  CHECK(p[1] == doctest::Approx(-0.25));
  CHECK(p[2] == doctest::Approx(-0.125));
  CHECK(is_stable(PolynomialFilter({1.0, -0.99})));
  CHECK_FALSE(is_stable(PolynomialFilter({1.0, -1.25})));
}

TEST_CASE("apply_fir impulse, identity and AR(1) inversion") {
  const auto y = apply_fir(impulse(5), PolynomialFilter({1.0, -0.99}));
  CHECK(y[0] == 1.0);
  CHECK(y[1] == doctest::Approx(-0.99));
  for (std::size_t i = 2; i < 5; ++i) CHECK(y[i] == 0.0);

  const auto x = oracle::gaussian_noise(1000, 3);
  CHECK(apply_fir(x, PolynomialFilter()) == x);

  const std::vector<double> a{1.0, -0.9};
  const auto ar = oracle::ar_filter(a, x);
  const auto back = apply_fir(ar, PolynomialFilter(a));
  for (std::size_t n = 1; n < x.size(); ++n) CHECK(std::abs(back[n] - x[n]) < 1e-9);
}

TEST_CASE("apply_allpole inverts apply_fir and has geometric impulse response") {
  const auto x = oracle::gaussian_noise(2000, 5);
  const PolynomialFilter c({1.0, -1.2, 0.7, -0.1});
  REQUIRE(is_stable(c));
  const auto round = apply_allpole(apply_fir(x, c), c);
  for (std::size_t n = 0; n < x.size(); ++n) CHECK(std::abs(round[n] - x[n]) < 1e-9);

  const auto h = apply_allpole(impulse(30), PolynomialFilter({1.0, -0.5}));
  for (std::size_t n = 0; n < 30; ++n) CHECK(h[n] == doctest::Approx(std::pow(0.5, n)));

  const auto g = apply_allpole(impulse(4), PolynomialFilter({1.0, -0.5}), 3.0);
  CHECK(g[2] == doctest::Approx(0.75));
  CHECK_THROWS_AS(apply_allpole(x, PolynomialFilter({1.0, -1.1})), InvalidArgument);
}

TEST_CASE("apply_allpole on white noise follows the filter response") {
  const auto poles = std::vector<std::complex<double>>{std::polar(0.8, 0.6), std::polar(0.8, -0.6),
                                                       0.5};
  LpcModel model;
  model.polynomial = PolynomialFilter(oracle::expand(poles));
  const auto x = oracle::gaussian_noise(1 << 17, 11);
  const auto y = apply_allpole(x, model.polynomial);
  const auto resp = frequency_response(model, 65, 2.0 * std::numbers::pi);
  double worst = 0.0;
  for (std::size_t i = 2; i + 2 < resp.frequencies_hz.size(); ++i) {
    const double omega = resp.frequencies_hz[i];  // sample rate 2 pi: Hz == rad/sample
    worst = std::max(worst, std::abs(welch_db(y, omega, 256) - resp.magnitude_db[i]));
  }
  CHECK(worst < 1.0);
}

TEST_CASE("integrate inverts the lip filter and sums geometric series") {
  const auto x = oracle::gaussian_noise(3000, 7);
  const auto back = integrate(apply_fir(x, lip_radiation(0.99)), 0.99);
  for (std::size_t n = 0; n < x.size(); ++n) CHECK(std::abs(back[n] - x[n]) < 1e-9);

  const auto h = integrate(impulse(100), 0.99);
  for (std::size_t n = 0; n < 100; ++n) CHECK(h[n] == doctest::Approx(std::pow(0.99, n)));

  const auto s = integrate(std::vector<double>(200, 1.0), 0.5);
  CHECK(s.back() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK_THROWS_AS(integrate(x, 1.0), InvalidArgument);
  CHECK_THROWS_AS(integrate(x, 0.0), InvalidArgument);
  CHECK(lip_radiation(0.95)[1] == doctest::Approx(-0.95));
}

TEST_CASE("rms") {
  CHECK(rms(std::vector<double>{3.0, -3.0, 3.0, -3.0}) == doctest::Approx(3.0));
  CHECK(rms(std::vector<double>{}) == 0.0);
}
