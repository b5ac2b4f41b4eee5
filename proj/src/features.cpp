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

#include "glottkit/features.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>
#include <string>

#include <fftw3.h>

#include "glottkit/error.hpp"

namespace glottkit {
namespace {

// FFTW planning is not thread-safe; execution is.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

std::vector<double> magnitude_spectrum(const std::vector<double>& x, std::size_t nfft) {
  double* in = fftw_alloc_real(nfft);
  fftw_complex* out = fftw_alloc_complex(nfft / 2 + 1);
  fftw_plan plan;
  {
    std::lock_guard lock(fftw_planner_mutex());
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(nfft), in, out, FFTW_ESTIMATE);
  }
  std::fill(in, in + nfft, 0.0);
  std::copy(x.begin(), x.end(), in);
  fftw_execute(plan);
  std::vector<double> mag(nfft / 2 + 1);
  for (std::size_t i = 0; i < mag.size(); ++i) mag[i] = std::hypot(out[i][0], out[i][1]);
  {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  fftw_free(in);
  fftw_free(out);
  return mag;
}

std::vector<double> linear_amplitudes(const HarmonicSeries& s) {
  std::vector<double> a(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) a[i] = std::pow(10.0, s.amplitudes_db[i] / 20.0);
  return a;
}

}  // namespace

double pole_angle_to_hz(double angle, double sample_rate) {
  return angle * sample_rate / (2.0 * std::numbers::pi);
}

double pole_radius_to_bandwidth_hz(double radius, double sample_rate) {
  return -std::log(radius) * sample_rate / std::numbers::pi;
}

double real_pole_to_cutoff_hz(double pole, double sample_rate) {
  if (!(pole > 0.0)) return sample_rate / 2.0;
  return std::min(-std::log(pole) * sample_rate / (2.0 * std::numbers::pi), sample_rate / 2.0);
}

GlottalParams glottal_params_from_poles(const LpcModel& glottis, double sample_rate) {
  if (glottis.order() != 3) throw InvalidArgument("glottis model must be of order 3");
  if (!(sample_rate > 0.0)) throw InvalidArgument("sample rate must be positive");
  const auto roots = cubic_roots(glottis.polynomial).poles;
  GlottalParams out;

  const std::complex<double>* pair = nullptr;
  for (const auto& z : roots) {
    if (z.imag() > 0.0) pair = &z;
  }
  if (pair != nullptr) {
    double real_pole = 0.0;
    for (const auto& z : roots) {
      if (z.imag() == 0.0) real_pole = z.real();
    }
    out.fg = pole_angle_to_hz(std::arg(*pair), sample_rate);
    out.bg = pole_radius_to_bandwidth_hz(std::abs(*pair), sample_rate);
    out.fst = real_pole_to_cutoff_hz(real_pole, sample_rate);
    out.tilt_degenerate = !(real_pole > 0.0);
    return out;
  }

  std::vector<double> cutoffs;
  for (const auto& z : roots) {
    if (!(z.real() > 0.0)) out.tilt_degenerate = true;
    cutoffs.push_back(real_pole_to_cutoff_hz(z.real(), sample_rate));
  }
  std::sort(cutoffs.begin(), cutoffs.end());
  out.formant_from_real_poles = true;
  out.fg = std::sqrt(cutoffs[0] * cutoffs[1]);
  out.bg = cutoffs[0] + cutoffs[1];
  out.fst = cutoffs[2];
  return out;
}

HarmonicSeries harmonic_amplitudes(std::span<const double> x, double f0, double sample_rate) {
  if (!(f0 > 0.0) || !(sample_rate > 0.0)) {
    throw InvalidArgument("harmonic analysis needs positive f0 and sample rate");
  }
  const double period = sample_rate / f0;
  if (static_cast<double>(x.size()) < 4.0 * period) {
    throw InvalidArgument("harmonic analysis needs at least four periods of signal");
  }
  const double ceiling = std::min(kHarmonicCeilingHz, sample_rate / 2.0);
  if (2.0 * f0 >= ceiling) {
    throw InvalidArgument("fewer than two harmonics below " + std::to_string(ceiling) + " Hz");
  }

  const auto w = make_window(Window::kHann, x.size());
  double wsum = 0.0;
  std::vector<double> xw(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    xw[i] = x[i] * w[i];
    wsum += w[i];
  }
  // Eightfold zero padding keeps Hann scalloping of the peak below ~0.03 dB.
  std::size_t nfft = 8192;
  while (nfft < 8 * x.size()) nfft *= 2;
  const auto mag = magnitude_spectrum(xw, nfft);
  const double bin_hz = sample_rate / static_cast<double>(nfft);

  HarmonicSeries out;
  for (int k = 1; k * f0 < ceiling; ++k) {
    const double centre = k * f0;
    const auto lo = static_cast<std::size_t>(std::max(0.0, std::ceil((centre - f0 / 4) / bin_hz)));
    const auto hi = std::min(mag.size() - 1,
                             static_cast<std::size_t>(std::floor((centre + f0 / 4) / bin_hz)));
    std::size_t best = lo;
    for (std::size_t b = lo; b <= hi; ++b) {
      if (mag[b] > mag[best]) best = b;
    }
    const double amplitude = 2.0 * mag[best] / wsum;
    out.frequencies_hz.push_back(static_cast<double>(best) * bin_hz);
    out.amplitudes_db.push_back(20.0 * std::log10(std::max(amplitude, 1e-300)));
  }
  return out;
}

double h1h2(const HarmonicSeries& series) {
  if (series.size() < 2) throw InvalidArgument("H1-H2 needs at least two harmonics");
  return series.amplitudes_db[0] - series.amplitudes_db[1];
}

double hrf(const HarmonicSeries& series) {
  if (series.size() < 2) throw InvalidArgument("HRF needs at least two harmonics");
  const auto a = linear_amplitudes(series);
  double upper = 0.0;
  for (std::size_t k = 1; k < a.size(); ++k) upper += a[k];
  return 20.0 * std::log10(upper / a[0]);
}

double spectral_tilt(const HarmonicSeries& series) {
  if (series.size() < 3) throw InvalidArgument("spectral tilt needs at least three harmonics");
  const std::size_t n = series.size();
  double mx = 0.0, my = 0.0;
  std::vector<double> lx(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(series.frequencies_hz[i] > 0.0)) {
      throw InvalidArgument("harmonic frequencies must be positive");
    }
    lx[i] = std::log10(series.frequencies_hz[i]);
    mx += lx[i];
    my += series.amplitudes_db[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (lx[i] - mx) * (series.amplitudes_db[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  if (sxx == 0.0) throw InvalidArgument("harmonic frequencies must differ");
  return sxy / sxx;
}

SpectralFeatures spectral_features(std::span<const double> derivative, double f0,
                                   double sample_rate) {
  const auto series = harmonic_amplitudes(derivative, f0, sample_rate);
  SpectralFeatures out;
  out.f0 = f0;
  out.h1h2 = h1h2(series);
  out.hrf = hrf(series);
  out.st = spectral_tilt(series);
  return out;
}

double median(std::vector<double> values) {
  if (values.empty()) throw InvalidArgument("median of empty sequence");
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower =
      *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

F0Track estimate_f0(const AudioBuffer& buf, const F0Options& options) {
  if (!(options.f_min_hz >= 50.0 && options.f_max_hz <= 1000.0 &&
        options.f_min_hz < options.f_max_hz)) {
    throw InvalidArgument("f0 range must satisfy 50 <= f_min < f_max <= 1000");
  }
  if (buf.sample_rate <= 0 || buf.samples.empty()) throw InvalidArgument("empty audio");
  const double fs = buf.sample_rate;
  auto frame_len = static_cast<std::size_t>(
      std::max(std::ceil(2.0 * fs / options.f_min_hz) + 2.0, std::round(0.032 * fs)));
  frame_len = std::min(frame_len, buf.samples.size());
  const auto hop = std::max<std::size_t>(1, static_cast<std::size_t>(options.hop_ms * 1e-3 * fs));

  std::vector<std::size_t> starts;
  for (std::size_t s = 0; s + frame_len <= buf.samples.size(); s += hop) starts.push_back(s);

  std::vector<double> frame_rms(starts.size());
  double peak = 0.0;
  for (std::size_t i = 0; i < starts.size(); ++i) {
    frame_rms[i] = rms(std::span(buf.samples).subspan(starts[i], frame_len));
    peak = std::max(peak, frame_rms[i]);
  }
  const double floor = peak * std::pow(10.0, options.rms_floor_db / 20.0);

  F0Track track;
  std::vector<double> voiced;
  for (std::size_t i = 0; i < starts.size(); ++i) {
    track.times_s.push_back((static_cast<double>(starts[i]) + frame_len / 2.0) / fs);
    double f0 = 0.0;
    if (peak > 0.0 && frame_rms[i] > floor) {
      const auto per = periodicity(std::span(buf.samples).subspan(starts[i], frame_len),
                                   buf.sample_rate, options.f_min_hz, options.f_max_hz);
      if (per.peak > options.voicing_threshold && per.lag > 0.0) f0 = fs / per.lag;
    }
    track.f0_hz.push_back(f0);
    if (f0 > 0.0) voiced.push_back(f0);
  }
  if (voiced.empty()) throw NoVoicedFrames("no voiced frames for f0 estimation");
  track.median_hz = median(std::move(voiced));
  return track;
}

}  // namespace glottkit
