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

#include "glottkit/gif.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "glottkit/error.hpp"

namespace glottkit {
namespace {

std::vector<double> windowed(std::span<const double> x, const std::vector<double>& w) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] * w[i];
  return out;
}

struct Pipeline {
  std::span<const double> speech;
  std::size_t vt_order;
  double lip_d;
  std::vector<double> window;

  Pipeline(std::span<const double> frame, int sample_rate, const AnalysisConfig& cfg)
      : speech(frame),
        vt_order(static_cast<std::size_t>(cfg.resolved_vt_order(sample_rate))),
        lip_d(cfg.lip_d),
        window(make_window(Window::kHann, frame.size())) {
    cfg.validate();
    if (frame.size() < 4 * vt_order) {
      throw InvalidArgument("frame of " + std::to_string(frame.size()) +
                            " samples is shorter than 4 * Nv = " + std::to_string(4 * vt_order));
    }
    bool silent = true;
    for (double v : frame) {
      if (!std::isfinite(v)) throw InvalidArgument("frame contains non-finite samples");
      if (v != 0.0) silent = false;
    }
    if (silent) throw DegenerateFrame("silent frame");
  }

  LpcModel lpc(std::span<const double> x, std::size_t order) const {
    return lpc_analyze(windowed(x, window), order);
  }

  SourceFilterDecomposition finish(Method method, PolynomialFilter pre_emphasis,
                                   LpcModel glottis, LpcModel vocal_tract) const {
    SourceFilterDecomposition d;
    d.method = method;
    d.lip_d = lip_d;
    d.pre_emphasis = std::move(pre_emphasis);
    d.glottal_flow_derivative = apply_fir(speech, vocal_tract.polynomial);
    d.glottal_flow = integrate(d.glottal_flow_derivative, lip_d);
    d.glottis = std::move(glottis);
    d.vocal_tract = std::move(vocal_tract);
    return d;
  }

  // Shared tail of IAIF and IOP-IAIF once the pre-emphasis filter is known.
  SourceFilterDecomposition iaif_tail(Method method, PolynomialFilter pre_emphasis,
                                      std::size_t glottis_order) const {
    const auto gross_vt = lpc(apply_fir(speech, pre_emphasis), vt_order);
    const auto glottis =
        lpc(integrate(apply_fir(speech, gross_vt.polynomial), lip_d), glottis_order);
    const auto vocal_tract =
        lpc(integrate(apply_fir(speech, glottis.polynomial), lip_d), vt_order);
    return finish(method, std::move(pre_emphasis), glottis, vocal_tract);
  }
};

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::kIaif:
      return "iaif";
    case Method::kGfmIaif:
      return "gfm-iaif";
    case Method::kIopIaif:
      return "iop-iaif";
  }
  return "unknown";
}

Method method_from_string(std::string_view name) {
  if (name == "iaif") return Method::kIaif;
  if (name == "gfm-iaif" || name == "gfm_iaif" || name == "gfmiaif") return Method::kGfmIaif;
  if (name == "iop-iaif" || name == "iop_iaif" || name == "iopiaif") return Method::kIopIaif;
  throw InvalidArgument("unknown method: " + std::string(name));
}

void AnalysisConfig::validate() const {
  if (!(lip_d > 0.0 && lip_d < 1.0)) throw InvalidArgument("lip_d must lie in (0, 1)");
  if (vt_order && *vt_order < 4) throw InvalidArgument("vt_order must be >= 4");
  if (glottis_fine_order < 1) throw InvalidArgument("glottis_fine_order must be >= 1");
  if (!(frame_len_ms > 0.0)) throw InvalidArgument("frame_len_ms must be positive");
  if (!(hop_fraction > 0.0 && hop_fraction <= 1.0)) {
    throw InvalidArgument("hop_fraction must lie in (0, 1]");
  }
  if (!(iop_gain_threshold > 0.0 && iop_gain_threshold < 1.0)) {
    throw InvalidArgument("iop_gain_threshold must lie in (0, 1)");
  }
  if (max_iop_order < 1) throw InvalidArgument("max_iop_order must be >= 1");
  if (!(voicing_threshold >= 0.0 && voicing_threshold < 1.0)) {
    throw InvalidArgument("voicing_threshold must lie in [0, 1)");
  }
  if (!(voicing_rms_floor_db < 0.0)) throw InvalidArgument("voicing_rms_floor_db must be < 0");
  if (!(f0_min_hz >= 50.0 && f0_max_hz <= 1000.0 && f0_min_hz < f0_max_hz)) {
    throw InvalidArgument("f0 range must satisfy 50 <= f0_min_hz < f0_max_hz <= 1000");
  }
}

int AnalysisConfig::resolved_vt_order(int sample_rate) const {
  if (vt_order) return *vt_order;
  if (sample_rate <= 0) throw InvalidArgument("sample rate must be positive");
  return sample_rate / 1000 + 4;
}

std::size_t AnalysisConfig::frame_length(int sample_rate) const {
  return static_cast<std::size_t>(std::lround(frame_len_ms * 1e-3 * sample_rate));
}

std::size_t AnalysisConfig::hop_length(int sample_rate) const {
  const auto hop = static_cast<std::size_t>(
      std::lround(hop_fraction * static_cast<double>(frame_length(sample_rate))));
  return std::max<std::size_t>(hop, 1);
}

SourceFilterDecomposition iaif_decompose(std::span<const double> frame, int sample_rate,
                                         const AnalysisConfig& cfg) {
  const Pipeline p(frame, sample_rate, cfg);
  // Gross glottis and lip radiation together: first-order LPC on the speech.
  auto pre = p.lpc(frame, 1).polynomial;
  return p.iaif_tail(Method::kIaif, std::move(pre),
                     static_cast<std::size_t>(cfg.glottis_fine_order));
}

SourceFilterDecomposition gfm_iaif_decompose(std::span<const double> frame, int sample_rate,
                                             const AnalysisConfig& cfg) {
  const Pipeline p(frame, sample_rate, cfg);
  // Lip radiation is cancelled up front, so every later step works on the
  // integrated signal.
  const auto integrated = integrate(frame, cfg.lip_d);

  // Gross glottis: three first-order sections, each fitted to the residual of
  // the previous ones.
  PolynomialFilter gross_glottis;
  std::vector<double> residual = integrated;
  for (int i = 0; i < 3; ++i) {
    const auto section = p.lpc(residual, 1).polynomial;
    gross_glottis = gross_glottis * section;
    residual = apply_fir(residual, section);
  }

  const auto gross_vt = p.lpc(apply_fir(integrated, gross_glottis), p.vt_order);
  const auto glottis = p.lpc(apply_fir(integrated, gross_vt.polynomial), 3);
  const auto vocal_tract = p.lpc(apply_fir(integrated, glottis.polynomial), p.vt_order);
  return p.finish(Method::kGfmIaif, std::move(gross_glottis), glottis, vocal_tract);
}

SourceFilterDecomposition iop_iaif_decompose(std::span<const double> frame, int sample_rate,
                                             const AnalysisConfig& cfg) {
  const Pipeline p(frame, sample_rate, cfg);
  PolynomialFilter pre;
  std::vector<double> residual(frame.begin(), frame.end());
  while (pre.order() < static_cast<std::size_t>(cfg.max_iop_order)) {
    const auto section = p.lpc(residual, 1).polynomial;
    if (std::abs(section[1]) < cfg.iop_gain_threshold) break;
    pre = pre * section;
    residual = apply_fir(residual, section);
  }
  return p.iaif_tail(Method::kIopIaif, std::move(pre), 3);
}

SourceFilterDecomposition decompose_frame(Method method, std::span<const double> frame,
                                          int sample_rate, const AnalysisConfig& cfg) {
  switch (method) {
    case Method::kIaif:
      return iaif_decompose(frame, sample_rate, cfg);
    case Method::kGfmIaif:
      return gfm_iaif_decompose(frame, sample_rate, cfg);
    case Method::kIopIaif:
      return iop_iaif_decompose(frame, sample_rate, cfg);
  }
  throw InvalidArgument("unknown method");
}

std::vector<double> excitation_residual(std::span<const double> frame,
                                        const SourceFilterDecomposition& d) {
  const auto x = integrate(frame, d.lip_d);
  return apply_fir(apply_fir(x, d.glottis.polynomial), d.vocal_tract.polynomial);
}

std::vector<double> reconstruct(std::span<const double> residual,
                                const SourceFilterDecomposition& d) {
  auto y = apply_allpole(residual, d.glottis.polynomial);
  y = apply_allpole(y, d.vocal_tract.polynomial);
  return apply_fir(y, lip_radiation(d.lip_d));
}

Periodicity periodicity(std::span<const double> frame, int sample_rate, double f_min_hz,
                        double f_max_hz) {
  Periodicity out;
  const std::size_t n = frame.size();
  const auto lag_min =
      static_cast<std::size_t>(std::max(1.0, std::floor(sample_rate / f_max_hz)));
  auto lag_max = static_cast<std::size_t>(std::ceil(sample_rate / f_min_hz));
  // Keep at least half the frame overlapping.
  lag_max = std::min(lag_max, n / 2);
  if (lag_min + 2 > lag_max) return out;

  std::vector<double> corr(lag_max + 2, 0.0);
  for (std::size_t k = lag_min - 1; k <= lag_max + 1 && k < n; ++k) {
    double xy = 0.0, xx = 0.0, yy = 0.0;
    for (std::size_t i = 0; i + k < n; ++i) {
      xy += frame[i] * frame[i + k];
      xx += frame[i] * frame[i];
      yy += frame[i + k] * frame[i + k];
    }
    corr[k] = (xx > 0.0 && yy > 0.0) ? xy / std::sqrt(xx * yy) : 0.0;
  }

  double global = -1.0;
  for (std::size_t k = lag_min; k <= lag_max; ++k) global = std::max(global, corr[k]);
  if (global <= 0.0) return out;
  // Smallest local maximum close to the global one; guards against octave errors.
  std::size_t best = 0;
  for (std::size_t k = lag_min; k <= lag_max; ++k) {
    const bool local_max = corr[k] >= corr[k - 1] && corr[k] >= corr[k + 1];
    if (local_max && corr[k] >= 0.9 * global) {
      best = k;
      break;
    }
  }
  if (best == 0) return out;
  const double a = corr[best - 1], b = corr[best], c = corr[best + 1];
  const double denom = a - 2.0 * b + c;
  const double shift = denom != 0.0 ? std::clamp(0.5 * (a - c) / denom, -0.5, 0.5) : 0.0;
  out.lag = static_cast<double>(best) + shift;
  out.peak = b - 0.25 * (a - c) * shift;
  return out;
}

UtteranceDecomposition decompose_utterance(const AudioBuffer& buf, Method method,
                                           const AnalysisConfig& cfg) {
  cfg.validate();
  if (buf.sample_rate <= 0) throw InvalidArgument("sample rate must be positive");
  UtteranceDecomposition out;
  out.method = method;
  out.sample_rate = buf.sample_rate;
  out.frame_length = cfg.frame_length(buf.sample_rate);
  out.hop = cfg.hop_length(buf.sample_rate);
  if (buf.samples.size() <= out.frame_length) {
    throw InvalidArgument("utterance shorter than one analysis frame");
  }
  const auto frames = frame_signal(buf, out.frame_length, out.hop, Window::kRectangular);
  out.total_frames = frames.size();

  std::vector<double> frame_rms(frames.size());
  double peak_rms = 0.0;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    frame_rms[i] = rms(frames[i].samples);
    peak_rms = std::max(peak_rms, frame_rms[i]);
  }
  const double rms_floor = peak_rms * std::pow(10.0, cfg.voicing_rms_floor_db / 20.0);

  out.glottal_flow_derivative.assign(buf.samples.size(), 0.0);
  const std::size_t lead = (out.frame_length - out.hop) / 2;
  bool any = false;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const auto& f = frames[i];
    if (!(frame_rms[i] > rms_floor) || peak_rms == 0.0) continue;
    const auto per = periodicity(f.samples, buf.sample_rate, cfg.f0_min_hz, cfg.f0_max_hz);
    if (!(per.peak > cfg.voicing_threshold)) continue;

    auto d = decompose_frame(method, f.samples, buf.sample_rate, cfg);
    const std::size_t begin = f.start_index + lead;
    for (std::size_t j = 0; j < out.hop; ++j) {
      out.glottal_flow_derivative[begin + j] = d.glottal_flow_derivative[lead + j];
    }
    if (!any) out.voiced_begin = begin;
    out.voiced_end = begin + out.hop;
    any = true;
    out.frames.push_back({f.start_index, std::move(d)});
  }
  if (!any) throw NoVoicedFrames("no voiced frames found");
  return out;
}

}  // namespace glottkit
