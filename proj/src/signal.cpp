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

#include "glottkit/signal.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "glottkit/error.hpp"

namespace glottkit {

std::string_view to_string(Window w) {
  switch (w) {
    case Window::kRectangular:
      return "rectangular";
    case Window::kHann:
      return "hann";
  }
  return "unknown";
}

Window window_from_string(std::string_view name) {
  if (name == "rectangular" || name == "rect") return Window::kRectangular;
  if (name == "hann" || name == "hanning") return Window::kHann;
  throw InvalidArgument("unknown window: " + std::string(name));
}

std::vector<double> make_window(Window w, std::size_t n) {
  std::vector<double> out(n, 1.0);
  if (w == Window::kHann && n > 1) {
    const double denom = static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / denom);
    }
  }
  return out;
}

std::vector<Frame> frame_signal(const AudioBuffer& buf, std::size_t frame_len,
                                std::size_t hop, Window window) {
  if (frame_len == 0 || hop == 0 || hop > frame_len) {
    throw InvalidArgument("framing requires 0 < hop <= frame_len");
  }
  if (frame_len > buf.samples.size()) {
    throw InvalidArgument("frame length " + std::to_string(frame_len) +
                          " exceeds buffer length " + std::to_string(buf.samples.size()));
  }
  const auto w = make_window(window, frame_len);
  std::vector<Frame> frames;
  frames.reserve((buf.samples.size() - frame_len) / hop + 1);
  for (std::size_t start = 0; start + frame_len <= buf.samples.size(); start += hop) {
    Frame f;
    f.start_index = start;
    f.window = window;
    f.samples.resize(frame_len);
    for (std::size_t i = 0; i < frame_len; ++i) f.samples[i] = buf.samples[start + i] * w[i];
    frames.push_back(std::move(f));
  }
  return frames;
}

PolynomialFilter::PolynomialFilter(std::vector<double> coefficients, FilterRole role)
    : coefficients_(std::move(coefficients)), role_(role) {
  if (coefficients_.empty() || coefficients_[0] != 1.0) {
    throw InvalidArgument("polynomial filter must be monic (coefficients[0] == 1)");
  }
  for (double c : coefficients_) {
    if (!std::isfinite(c)) throw InvalidArgument("polynomial filter has non-finite coefficient");
  }
}

PolynomialFilter PolynomialFilter::operator*(const PolynomialFilter& other) const {
  std::vector<double> out(coefficients_.size() + other.coefficients_.size() - 1, 0.0);
  for (std::size_t i = 0; i < coefficients_.size(); ++i) {
    for (std::size_t j = 0; j < other.coefficients_.size(); ++j) {
      out[i + j] += coefficients_[i] * other.coefficients_[j];
    }
  }
  out[0] = 1.0;
  return PolynomialFilter(std::move(out), role_);
}

bool is_stable(const PolynomialFilter& p) {
  std::vector<double> a = p.coefficients();
  // Step down from order N to 1; each reflection coefficient must satisfy |k| < 1.
  for (std::size_t m = a.size() - 1; m >= 1; --m) {
    const double k = a[m];
    if (!(std::abs(k) < 1.0)) return false;
    const double denom = 1.0 - k * k;
    std::vector<double> next(m);
    next[0] = 1.0;
    for (std::size_t i = 1; i < m; ++i) next[i] = (a[i] - k * a[m - i]) / denom;
    a = std::move(next);
  }
  return true;
}

std::vector<double> apply_fir(std::span<const double> x, const PolynomialFilter& filter) {
  const auto& c = filter.coefficients();
  std::vector<double> y(x.size(), 0.0);
  for (std::size_t n = 0; n < x.size(); ++n) {
    double acc = 0.0;
    const std::size_t kmax = std::min(c.size() - 1, n);
    for (std::size_t k = 0; k <= kmax; ++k) acc += c[k] * x[n - k];
    y[n] = acc;
  }
  return y;
}

std::vector<double> apply_allpole(std::span<const double> x, const PolynomialFilter& filter,
                                  double gain) {
  if (!is_stable(filter)) throw InvalidArgument("all-pole filter is unstable");
  const auto& c = filter.coefficients();
  std::vector<double> y(x.size(), 0.0);
  for (std::size_t n = 0; n < x.size(); ++n) {
    double acc = gain * x[n];
    const std::size_t kmax = std::min(c.size() - 1, n);
    for (std::size_t k = 1; k <= kmax; ++k) acc -= c[k] * y[n - k];
    y[n] = acc;
  }
  return y;
}

std::vector<double> integrate(std::span<const double> x, double d) {
  if (!(d > 0.0 && d < 1.0)) throw InvalidArgument("integrator coefficient must lie in (0, 1)");
  std::vector<double> y(x.size());
  double prev = 0.0;
  for (std::size_t n = 0; n < x.size(); ++n) {
    prev = x[n] + d * prev;
    y[n] = prev;
  }
  return y;
}

PolynomialFilter lip_radiation(double d) { return PolynomialFilter({1.0, -d}); }

double rms(std::span<const double> x) {
  if (x.empty()) return 0.0;
  double acc = 0.0;
  for (double v : x) acc += v * v;
  return std::sqrt(acc / static_cast<double>(x.size()));
}

}  // namespace glottkit
