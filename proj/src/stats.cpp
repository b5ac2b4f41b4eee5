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

#include "glottkit/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "glottkit/error.hpp"

namespace glottkit {

std::vector<double> midranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

RankSumTest wilcoxon_rank_sum(std::span<const double> x, std::span<const double> y) {
  if (x.size() < 2 || y.size() < 2) {
    throw InvalidArgument("rank-sum test needs at least two values per sample");
  }
  for (double v : x) if (std::isnan(v)) throw InvalidArgument("rank-sum test on NaN");
  for (double v : y) if (std::isnan(v)) throw InvalidArgument("rank-sum test on NaN");

  const std::size_t n1 = x.size(), n2 = y.size(), n = n1 + n2;
  std::vector<double> pooled(x.begin(), x.end());
  pooled.insert(pooled.end(), y.begin(), y.end());
  const auto ranks = midranks(pooled);

  // Work with doubled ranks so tied midranks stay integral.
  std::vector<long> twice(n);
  for (std::size_t i = 0; i < n; ++i) twice[i] = std::lround(2.0 * ranks[i]);
  long observed = 0;
  for (std::size_t i = 0; i < n1; ++i) observed += twice[i];

  RankSumTest out;
  const double nn1 = static_cast<double>(n1), nn2 = static_cast<double>(n2);
  out.u = 0.5 * static_cast<double>(observed) - nn1 * (nn1 + 1.0) / 2.0;

  if (n1 <= kExactRankSumLimit && n2 <= kExactRankSumLimit) {
    // counts[j][s]: subsets of size j with doubled rank sum s.
    const long max_sum = std::accumulate(twice.begin(), twice.end(), 0L);
    std::vector<std::vector<double>> counts(n1 + 1, std::vector<double>(max_sum + 1, 0.0));
    counts[0][0] = 1.0;
    long reach = 0;
    for (std::size_t i = 0; i < n; ++i) {
      reach += twice[i];
      for (std::size_t j = std::min(n1, i + 1); j >= 1; --j) {
        for (long s = reach; s >= twice[i]; --s) counts[j][s] += counts[j - 1][s - twice[i]];
      }
    }
    double total = 0.0, le = 0.0, ge = 0.0;
    for (long s = 0; s <= max_sum; ++s) {
      const double c = counts[n1][s];
      total += c;
      if (s <= observed) le += c;
      if (s >= observed) ge += c;
    }
    out.p_value = std::min(1.0, 2.0 * std::min(le, ge) / total);
    out.exact = true;
    return out;
  }

  double tie_term = 0.0;
  std::vector<long> sorted = twice;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && sorted[j] == sorted[i]) ++j;
    const double t = static_cast<double>(j - i);
    tie_term += t * t * t - t;
    i = j;
  }
  const double nd = static_cast<double>(n);
  const double mean = nn1 * nn2 / 2.0;
  const double var = nn1 * nn2 / 12.0 * ((nd + 1.0) - tie_term / (nd * (nd - 1.0)));
  if (!(var > 0.0)) {
    out.p_value = 1.0;
    return out;
  }
  const double z = std::max(0.0, std::abs(out.u - mean) - 0.5) / std::sqrt(var);
  out.p_value = std::min(1.0, std::erfc(z / std::sqrt(2.0)));
  // Keep p strictly positive even when erfc underflows.
  out.p_value = std::max(out.p_value, std::numeric_limits<double>::min());
  return out;
}

double normalized_rank_sum(std::span<const double> x, std::span<const double> y) {
  const auto t = wilcoxon_rank_sum(x, y);
  const double total = static_cast<double>(x.size()) * static_cast<double>(y.size());
  return 2.0 * std::min(t.u, total - t.u) / total;
}

Quartiles quartiles(std::vector<double> values) {
  if (values.empty()) throw InvalidArgument("quartiles of empty sample");
  std::sort(values.begin(), values.end());
  auto at = [&](double q) {
    const double h = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
  };
  return {at(0.25), at(0.5), at(0.75), values.size()};
}

}  // namespace glottkit
