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

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace glottkit {

// Midranks (1-based) of the values; ties share the mean of their ranks.
std::vector<double> midranks(std::span<const double> values);

struct RankSumTest {
  double u = 0.0;        // Mann-Whitney U of the first sample
  double p_value = 1.0;  // two-sided
  bool exact = false;
};

// Largest per-sample size for which the exact null distribution is used.
inline constexpr std::size_t kExactRankSumLimit = 20;

// Two-sided Wilcoxon rank-sum / Mann-Whitney test with midranks. Uses the
// exact tie-aware permutation distribution when both samples have at most
// kExactRankSumLimit values, the normal approximation with tie and
// continuity corrections otherwise. Throws InvalidArgument for samples with
// fewer than two values.
RankSumTest wilcoxon_rank_sum(std::span<const double> x, std::span<const double> y);

// 2 min(U, n1 n2 - U) / (n1 n2): 0 for disjoint samples, 1 for full overlap.
double normalized_rank_sum(std::span<const double> x, std::span<const double> y);

struct Quartiles {
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  std::size_t n = 0;
};

// Linear interpolation between order statistics (type 7).
Quartiles quartiles(std::vector<double> values);

}  // namespace glottkit
