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

#include "glottkit/synth.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <string>

#include "glottkit/error.hpp"
#include "glottkit/wav.hpp"

namespace glottkit {
namespace {

std::complex<double> resonance_pole(double frequency_hz, double bandwidth_hz, double fs) {
  return std::polar(std::exp(-std::numbers::pi * bandwidth_hz / fs),
                    2.0 * std::numbers::pi * frequency_hz / fs);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

std::vector<Formant> neutral_vowel_formants() {
  return {{500, 80}, {1500, 90}, {2500, 120}, {3500, 150}, {4500, 200}};
}

void SynthSpec::validate() const {
  if (sample_rate <= 0) throw InvalidArgument("sample rate must be positive");
  const double nyquist = sample_rate / 2.0;
  if (!(f0 > 0.0 && f0 < nyquist)) throw InvalidArgument("f0 must lie in (0, Nyquist)");
  if (!(lip_d > 0.0 && lip_d < 1.0)) throw InvalidArgument("lip_d must lie in (0, 1)");
  if (!(duration_s > 0.0)) throw InvalidArgument("duration must be positive");
  if (!(peak_amplitude > 0.0 && peak_amplitude < 1.0)) {
    throw InvalidArgument("peak amplitude must lie in (0, 1)");
  }
  if (vt_formants.empty()) throw InvalidArgument("at least one formant is required");
  for (const auto& f : vt_formants) {
    if (!(f.frequency_hz > 0.0 && f.frequency_hz < nyquist) || !(f.bandwidth_hz > 0.0)) {
      throw InvalidArgument("formants need 0 < F < Nyquist and B > 0");
    }
  }
  if (std::isnan(noise_floor_db)) throw InvalidArgument("noise floor must not be NaN");
  glottis_from_params(params, sample_rate);
}

LpcModel glottis_from_params(const GlottalParams& params, double sample_rate) {
  const double nyquist = sample_rate / 2.0;
  if (!(params.fg > 0.0 && params.fg < nyquist) || !(params.bg > 0.0) ||
      !(params.fst > 0.0 && params.fst < nyquist)) {
    throw InvalidArgument("glottal parameters need 0 < Fg, Fst < Nyquist and Bg > 0");
  }
  const auto a = resonance_pole(params.fg, params.bg, sample_rate);
  const double b = std::exp(-2.0 * std::numbers::pi * params.fst / sample_rate);
  LpcModel m;
  m.polynomial = polynomial_from_poles(PoleSet{{a, std::conj(a), b}});
  return m;
}

LpcModel vocal_tract_from_formants(const std::vector<Formant>& formants, double sample_rate) {
  PoleSet poles;
  for (const auto& f : formants) {
    const auto p = resonance_pole(f.frequency_hz, f.bandwidth_hz, sample_rate);
    poles.poles.push_back(p);
    poles.poles.push_back(std::conj(p));
  }
  LpcModel m;
  m.polynomial = polynomial_from_poles(poles);
  return m;
}

SynthResult synthesize(const SynthSpec& spec) {
  spec.validate();
  const double fs = spec.sample_rate;
  SynthResult out;
  out.glottis = glottis_from_params(spec.params, fs);
  out.vocal_tract = vocal_tract_from_formants(spec.vt_formants, fs);
  out.lip_d = spec.lip_d;
  out.period_samples = static_cast<std::size_t>(std::lround(fs / spec.f0));
  const auto trim = static_cast<std::size_t>(std::lround(kSynthTrimSeconds * fs));
  const auto total = static_cast<std::size_t>(std::lround((spec.duration_s + kSynthTrimSeconds) * fs));

  std::mt19937_64 rng(spec.seed);
  const std::size_t onset = rng() % out.period_samples;
  std::vector<double> excitation(total, 0.0);
  for (std::size_t n = onset; n < total; n += out.period_samples) excitation[n] = 1.0;

  const auto flow = apply_allpole(excitation, out.glottis.polynomial);
  const auto lip = lip_radiation(spec.lip_d);
  const auto derivative = apply_fir(flow, lip);
  const auto speech = apply_fir(apply_allpole(flow, out.vocal_tract.polynomial), lip);

  auto tail = [trim](const std::vector<double>& v) {
    return std::vector<double>(v.begin() + static_cast<std::ptrdiff_t>(trim), v.end());
  };
  out.clean = tail(speech);
  out.excitation = tail(excitation);
  out.glottal_flow = tail(flow);
  out.glottal_flow_derivative = tail(derivative);

  double peak = 0.0;
  for (double v : out.clean) peak = std::max(peak, std::abs(v));
  out.scale = peak > 0.0 ? spec.peak_amplitude / peak : 1.0;
  for (auto* v : {&out.clean, &out.excitation, &out.glottal_flow, &out.glottal_flow_derivative}) {
    for (double& x : *v) x *= out.scale;
  }
  out.pulse_onset = onset >= trim ? onset - trim
                                  : (out.period_samples - (trim - onset) % out.period_samples) %
                                        out.period_samples;

  out.audio.sample_rate = spec.sample_rate;
  out.audio.samples = out.clean;
  if (std::isfinite(spec.noise_floor_db)) {
    std::normal_distribution<double> noise(0.0, std::pow(10.0, spec.noise_floor_db / 20.0));
    for (double& x : out.audio.samples) x += noise(rng);
  }
  return out;
}

std::array<EffortClass, 3> default_effort_classes() {
  return {{{Effort::kSoft, {120.0, 60.0, 500.0}},
           {Effort::kMedium, {160.0, 110.0, 1200.0}},
           {Effort::kLoud, {200.0, 160.0, 2500.0}}}};
}

CorpusManifest make_effort_corpus(const SynthSpec& base,
                                  const std::array<EffortClass, 3>& classes,
                                  const CorpusOptions& options,
                                  const std::filesystem::path& out_dir,
                                  const std::string& metadata) {
  base.validate();
  if (options.n_per_class < 1) throw InvalidArgument("n_per_class must be >= 1");
  if (!(options.jitter >= 0.0)) throw InvalidArgument("jitter must be >= 0");
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (classes[i].effort != kAllEfforts[i]) {
      throw InvalidArgument("effort classes must be ordered soft, medium, loud");
    }
  }
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());

  const double nyquist = base.sample_rate / 2.0;
  CorpusManifest manifest;
  std::uint64_t index = 0;
  for (const auto& cls : classes) {
    for (int i = 0; i < options.n_per_class; ++i, ++index) {
      const std::uint64_t stim_seed = splitmix64(options.seed ^ splitmix64(index));
      std::mt19937_64 rng(stim_seed);
      std::normal_distribution<double> unit(0.0, 1.0);
      auto jittered = [&](double v) {
        const double factor = std::max(0.2, 1.0 + options.jitter * unit(rng));
        return std::clamp(v * factor, 1.0, nyquist - 1.0);
      };
      SynthSpec spec = base;
      spec.params = cls.params;
      if (options.jitter > 0.0) {
        spec.params.fg = jittered(cls.params.fg);
        spec.params.bg = jittered(cls.params.bg);
        spec.params.fst = jittered(cls.params.fst);
      }
      spec.seed = rng();
      const auto result = synthesize(spec);

      char name[64];
      std::snprintf(name, sizeof name, "%s_%03d.wav", std::string(to_string(cls.effort)).c_str(), i);
      const auto path = out_dir / name;
      write_wav(path, result.audio, metadata);

      StimulusRecord rec;
      rec.path = std::filesystem::absolute(path);
      rec.vowel = options.vowel;
      rec.effort = cls.effort;
      rec.speaker = options.speaker;
      rec.ground_truth = spec.params;
      manifest.rows.push_back(std::move(rec));
    }
  }
  write_manifest(out_dir / "manifest.csv", manifest, metadata);
  return manifest;
}

}  // namespace glottkit
