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
#include <string_view>
#include <vector>

namespace glottkit {

// Mono signal with its sampling rate in Hz.
struct AudioBuffer {
  std::vector<double> samples;
  int sample_rate = 0;

  double duration_s() const {
    return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate : 0.0;
  }
};

enum class Window { kRectangular, kHann };

std::string_view to_string(Window w);
Window window_from_string(std::string_view name);

// Symmetric window of length n (Hann endpoints are exactly zero).
std::vector<double> make_window(Window w, std::size_t n);

struct Frame {
  std::vector<double> samples;  // window already applied
  std::size_t start_index = 0;
  Window window = Window::kRectangular;
};

// Frames at offsets 0, hop, 2*hop, ...; a trailing partial frame is dropped.
std::vector<Frame> frame_signal(const AudioBuffer& buf, std::size_t frame_len,
                                std::size_t hop, Window window);

enum class FilterRole { kInverseFir, kAllPole };

// Monic polynomial 1 + k1 z^-1 + ... + kN z^-N, used either as an FIR
// inverse filter or as the denominator of an all-pole filter.
class PolynomialFilter {
 public:
  PolynomialFilter() : coefficients_{1.0} {}
  explicit PolynomialFilter(std::vector<double> coefficients,
                            FilterRole role = FilterRole::kInverseFir);

  const std::vector<double>& coefficients() const { return coefficients_; }
  std::size_t order() const { return coefficients_.size() - 1; }
  FilterRole role() const { return role_; }
  double operator[](std::size_t i) const { return coefficients_[i]; }

  // Polynomial product; the result carries this filter's role.
  PolynomialFilter operator*(const PolynomialFilter& other) const;

 private:
  std::vector<double> coefficients_;
  FilterRole role_ = FilterRole::kInverseFir;
};

// Schur-Cohn step-down test: true when every root lies strictly inside the
// unit circle.
bool is_stable(const PolynomialFilter& p);

// y[n] = sum_k c[k] x[n-k], zero initial state.
std::vector<double> apply_fir(std::span<const double> x, const PolynomialFilter& filter);

// y[n] = gain*x[n] - sum_{k>=1} c[k] y[n-k], zero initial state.
// Throws InvalidArgument for an unstable denominator.
std::vector<double> apply_allpole(std::span<const double> x, const PolynomialFilter& filter,
                                  double gain = 1.0);

// Leaky integrator y[n] = x[n] + d*y[n-1]; inverse of the lip filter 1 - d z^-1.
std::vector<double> integrate(std::span<const double> x, double d);

// The lip radiation polynomial 1 - d z^-1.
PolynomialFilter lip_radiation(double d);

double rms(std::span<const double> x);

}  // namespace glottkit
