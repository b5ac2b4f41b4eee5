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
#include <random>
#include <vector>

#include <doctest.h>

#include "glottkit/error.hpp"
#include "glottkit/stats.hpp"
#include "oracles.hpp"

using namespace glottkit;

TEST_CASE("midranks") {
  const std::vector<double> v{3, 1, 3, 2};
  CHECK(midranks(v) == std::vector<double>{3.5, 1, 3.5, 2});
  CHECK(midranks(v) == oracle::count_ranks(v));
}

TEST_CASE("rank-sum hand examples") {
  const std::vector<double> x{1, 2, 3}, y{4, 5, 6};
  const auto t = wilcoxon_rank_sum(x, y);
  CHECK(t.u == 0.0);
  CHECK(t.exact);
  CHECK(t.p_value == doctest::Approx(0.1));

  const auto same = wilcoxon_rank_sum(x, x);
  CHECK(same.u == doctest::Approx(4.5));
  CHECK(same.p_value == 1.0);

  CHECK_THROWS_AS(wilcoxon_rank_sum(std::vector<double>{1}, y), InvalidArgument);
  CHECK_THROWS_AS(wilcoxon_rank_sum(std::vector<double>{1, NAN}, y), InvalidArgument);
}

TEST_CASE("exact p-values match permutation enumeration") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> coarse(0, 4);
  std::normal_distribution<double> fine(0.0, 1.0);
  double worst = 0.0;
  for (std::size_t n1 = 2; n1 <= 6; ++n1) {
    for (std::size_t n2 = 2; n2 <= 6; ++n2) {
      for (int trial = 0; trial < 20; ++trial) {
        const bool ties = trial % 2 == 0;
        std::vector<double> x(n1), y(n2);
        for (auto& v : x) v = ties ? coarse(rng) : fine(rng);
        for (auto& v : y) v = ties ? coarse(rng) + 1 : fine(rng) + 0.8;
        const auto t = wilcoxon_rank_sum(x, y);
        CHECK(t.exact);
        worst = std::max(worst, std::abs(t.p_value - oracle::permutation_p(x, y)));
      }
    }
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("normal approximation on large samples") {
  const auto x = oracle::gaussian_noise(40, 1);
  auto y = oracle::gaussian_noise(40, 2);
  for (auto& v : y) v += 5.0;
  const auto t = wilcoxon_rank_sum(x, y);
  CHECK_FALSE(t.exact);
  CHECK(t.p_value < 1e-3);
  CHECK(t.p_value > 0.0);
  const auto null = wilcoxon_rank_sum(x, oracle::gaussian_noise(40, 3));
  CHECK(null.p_value > 1e-3);
  CHECK(null.p_value <= 1.0);
}

TEST_CASE("normalized rank sum") {
  const std::vector<double> lo{1, 2, 3, 4}, hi{5, 6, 7, 8};
  CHECK(normalized_rank_sum(lo, hi) == 0.0);
  CHECK(normalized_rank_sum(hi, lo) == 0.0);
  CHECK(normalized_rank_sum(lo, lo) == 1.0);

  // Shifting one uniform grid across another: overlap shrinks, score falls.
  std::vector<double> base;
  for (int i = 0; i < 10; ++i) base.push_back(i);
  double prev = 1.0;
  for (int shift = 1; shift <= 10; ++shift) {
    std::vector<double> moved;
    for (double v : base) moved.push_back(v + shift + 0.5);
    // Brute-force U: pairs with x > y, ties count half.
    double u = 0.0;
    for (double a : base)
      for (double b : moved) u += a > b ? 1.0 : (a == b ? 0.5 : 0.0);
    const double expected = 2.0 * std::min(u, 100.0 - u) / 100.0;
    const double got = normalized_rank_sum(base, moved);
    CHECK(got == doctest::Approx(expected));
    CHECK(got <= prev);
    if (shift < 9) CHECK(got > 0.0);
    prev = got;
  }
}

TEST_CASE("quartiles") {
  const auto q = quartiles({1, 2, 3, 4, 5});
  CHECK(q.q1 == 2.0);
  CHECK(q.median == 3.0);
  CHECK(q.q3 == 4.0);
  CHECK(q.n == 5);
  CHECK(quartiles({1, 2, 3, 4}).median == 2.5);
  CHECK_THROWS_AS(quartiles({}), InvalidArgument);
}
