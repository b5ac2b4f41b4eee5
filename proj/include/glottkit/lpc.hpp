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

#include <complex>
#include <span>
#include <vector>

#include "glottkit/signal.hpp"

namespace glottkit {

// All-pole model gain / A(z) from linear prediction.
struct LpcModel {
  PolynomialFilter polynomial;
  double gain = 1.0;
  // Reflection coefficients from the Levinson recursion, one per order step.
  // Empty for models built from poles.
  std::vector<double> reflection;

  std::size_t order() const { return polynomial.order(); }
};

struct PoleSet {
  std::vector<std::complex<double>> poles;
};

// r[k] = sum_n x[n] x[n+k] for k = 0..max_lag (biased, unnormalized).
// Throws DegenerateFrame for an all-zero input.
std::vector<double> autocorrelate(std::span<const double> x, std::size_t max_lag);

// Solves the autocorrelation normal equations of the given order.
// gain = sqrt(final prediction error).
LpcModel levinson_durbin(std::span<const double> r, std::size_t order);

// Relative white-noise floor added to r[0] by lpc_analyze.
inline constexpr double kLpcNoiseFloor = 1e-9;
// Largest pole radius allowed after stabilization.
inline constexpr double kMaxPoleRadius = 0.995;

// autocorrelate -> noise floor -> levinson_durbin -> stabilize.
LpcModel lpc_analyze(std::span<const double> x, std::size_t order);

// Polynomials that are already stable are returned unchanged. Otherwise
// every root with |z| >= 1 is reflected to 1/conj(z), radii are clamped to
// kMaxPoleRadius and the gain is rescaled so the magnitude response keeps
// its level.
LpcModel stabilize(const LpcModel& model);

// Roots of z^3 + c1 z^2 + c2 z + c3 for a degree-3 monic polynomial.
// Complex roots come out as an exact conjugate pair.
PoleSet cubic_roots(const PolynomialFilter& polynomial);

// Expands prod (1 - p_i z^-1). The pole set must be closed under conjugation.
PolynomialFilter polynomial_from_poles(const PoleSet& poles);

// Evaluates A(z) at z = e^{j omega}.
std::complex<double> evaluate_on_unit_circle(const PolynomialFilter& p, double omega);

struct MagnitudeResponse {
  std::vector<double> frequencies_hz;
  std::vector<double> magnitude_db;
};

// 20 log10 |gain / A(e^{j omega})| on n_points uniformly spaced over
// [0, sample_rate / 2].
MagnitudeResponse frequency_response(const LpcModel& model, std::size_t n_points,
                                     double sample_rate);

}  // namespace glottkit
