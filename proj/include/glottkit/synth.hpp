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

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "glottkit/features.hpp"
#include "glottkit/lpc.hpp"
#include "glottkit/manifest.hpp"
#include "glottkit/signal.hpp"

namespace glottkit {

struct Formant {
  double frequency_hz = 0.0;
  double bandwidth_hz = 0.0;
};

// Formants of a uniform 17.5 cm tube (neutral vowel).
std::vector<Formant> neutral_vowel_formants();

struct SynthSpec {
  double f0 = 220.5;
  GlottalParams params{150.0, 80.0, 800.0};
  std::vector<Formant> vt_formants = neutral_vowel_formants();
  double lip_d = 0.99;
  double duration_s = 1.0;
  int sample_rate = 22050;
  // White noise standard deviation in dB full scale; -infinity disables it.
  double noise_floor_db = -60.0;
  // Peak of the clean signal after scaling.
  double peak_amplitude = 0.5;
  std::uint64_t seed = 0;

  void validate() const;
};

// Length of the transient removed from the start of every synthetic signal.
inline constexpr double kSynthTrimSeconds = 0.05;

// Inverse of the matched-z mappings: a = exp(-pi Bg/Fs) exp(j 2 pi Fg/Fs),
// b = exp(-2 pi Fst/Fs).
LpcModel glottis_from_params(const GlottalParams& params, double sample_rate);
LpcModel vocal_tract_from_formants(const std::vector<Formant>& formants, double sample_rate);

struct SynthResult {
  AudioBuffer audio;  // with noise
  std::vector<double> clean;
  // Scaled excitation and the exact source signals, aligned with audio.
  std::vector<double> excitation;
  std::vector<double> glottal_flow;
  std::vector<double> glottal_flow_derivative;
  LpcModel glottis;
  LpcModel vocal_tract;
  double lip_d = 0.99;
  double scale = 1.0;
  std::size_t period_samples = 0;
  std::size_t pulse_onset = 0;
};

// Impulse train -> glottis -> vocal tract -> lip derivative -> scale -> noise.
SynthResult synthesize(const SynthSpec& spec);

struct EffortClass {
  Effort effort = Effort::kSoft;
  GlottalParams params;
};

std::array<EffortClass, 3> default_effort_classes();

struct CorpusOptions {
  int n_per_class = 20;
  double jitter = 0.1;  // relative standard deviation
  std::uint64_t seed = 1;
  std::string vowel = "schwa";
  std::string speaker = "synth";
};

// Writes n_per_class WAV files per class into out_dir plus manifest.csv,
// returns the manifest. Paths in the returned manifest are absolute; the
// file stores them relative to out_dir.
CorpusManifest make_effort_corpus(const SynthSpec& base,
                                  const std::array<EffortClass, 3>& classes,
                                  const CorpusOptions& options,
                                  const std::filesystem::path& out_dir,
                                  const std::string& metadata = {});

}  // namespace glottkit
