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

#include <span>
#include <vector>

#include "glottkit/gif.hpp"
#include "glottkit/lpc.hpp"
#include "glottkit/signal.hpp"

namespace glottkit {

// Glottal formant frequency/bandwidth and spectral tilt cutoff, all in Hz.
struct GlottalParams {
  double fg = 0.0;
  double bg = 0.0;
  double fst = 0.0;
  // Set when the real pole was <= 0 and fst was pinned to Nyquist.
  bool tilt_degenerate = false;
  // Set when no conjugate pair existed and the formant came from two real poles.
  bool formant_from_real_poles = false;
};

// Matched-z mappings between z-plane poles and analog frequencies.
double pole_angle_to_hz(double angle, double sample_rate);
double pole_radius_to_bandwidth_hz(double radius, double sample_rate);
double real_pole_to_cutoff_hz(double pole, double sample_rate);

// pre: order-3 model. A conjugate pair gives (fg, bg); the real pole gives fst.
// With three real roots the two lowest cutoffs form the glottal formant
// (fg = geometric mean, bg = sum) and the highest one is fst.
GlottalParams glottal_params_from_poles(const LpcModel& glottis, double sample_rate);

// Harmonic amplitudes of a periodic signal, below 5 kHz.
struct HarmonicSeries {
  std::vector<double> frequencies_hz;
  std::vector<double> amplitudes_db;

  std::size_t size() const { return amplitudes_db.size(); }
};

inline constexpr double kHarmonicCeilingHz = 5000.0;

// Hann-windowed spectrum zero-padded to >= 8192 bins; harmonic k takes the
// largest magnitude within k*f0 +/- f0/4. Throws InvalidArgument when fewer
// than two harmonics fit below kHarmonicCeilingHz or the signal holds fewer
// than four periods.
HarmonicSeries harmonic_amplitudes(std::span<const double> x, double f0, double sample_rate);

double h1h2(const HarmonicSeries& series);
// 20 log10(sum_{k>=2} A_k / A_1) with linear amplitudes.
double hrf(const HarmonicSeries& series);
// Least-squares slope of amplitude (dB) against log10 frequency, dB/decade.
double spectral_tilt(const HarmonicSeries& series);

struct SpectralFeatures {
  double h1h2 = 0.0;
  double hrf = 0.0;
  double st = 0.0;
  double f0 = 0.0;
};

SpectralFeatures spectral_features(std::span<const double> derivative, double f0,
                                   double sample_rate);

struct F0Options {
  double f_min_hz = 60.0;
  double f_max_hz = 500.0;
  double voicing_threshold = 0.3;
  double rms_floor_db = -20.0;
  double hop_ms = 10.0;
};

struct F0Track {
  std::vector<double> times_s;
  std::vector<double> f0_hz;  // 0 for unvoiced frames
  double median_hz = 0.0;     // over voiced frames
};

// Autocorrelation pitch tracker with parabolic peak interpolation.
// pre: 50 <= f_min < f_max <= 1000. Throws NoVoicedFrames.
F0Track estimate_f0(const AudioBuffer& buf, const F0Options& options = {});

double median(std::vector<double> values);

}  // namespace glottkit
