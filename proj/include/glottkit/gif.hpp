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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "glottkit/lpc.hpp"
#include "glottkit/signal.hpp"

namespace glottkit {

enum class Method { kIaif, kGfmIaif, kIopIaif };

std::string_view to_string(Method m);  // "iaif", "gfm-iaif", "iop-iaif"
Method method_from_string(std::string_view name);
inline constexpr Method kAllMethods[] = {Method::kIaif, Method::kGfmIaif, Method::kIopIaif};

struct AnalysisConfig {
  double lip_d = 0.99;
  // Vocal tract LPC order; unset means sample_rate / 1000 + 4.
  std::optional<int> vt_order;
  int glottis_fine_order = 3;
  double frame_len_ms = 32.0;
  double hop_fraction = 0.5;
  // IOP-IAIF stops adding first-order sections once |k1| falls below this.
  double iop_gain_threshold = 0.1;
  int max_iop_order = 30;

  // Frame selection.
  double voicing_rms_floor_db = -20.0;
  double voicing_threshold = 0.3;
  double f0_min_hz = 60.0;
  double f0_max_hz = 500.0;

  // Throws InvalidArgument on out-of-range values.
  void validate() const;

  int resolved_vt_order(int sample_rate) const;
  std::size_t frame_length(int sample_rate) const;
  std::size_t hop_length(int sample_rate) const;
};

struct SourceFilterDecomposition {
  Method method = Method::kGfmIaif;
  LpcModel glottis;      // fine estimate
  LpcModel vocal_tract;  // fine estimate
  double lip_d = 0.99;
  // Speech inverse-filtered by the fine vocal tract, and its integral.
  std::vector<double> glottal_flow_derivative;
  std::vector<double> glottal_flow;
  // Gross glottis (pre-emphasis) polynomial; its order is 1 for IAIF, 3 for
  // GFM-IAIF and data dependent for IOP-IAIF.
  PolynomialFilter pre_emphasis;
};

// Each pipeline takes an unwindowed frame. LPC is computed on Hann-windowed
// copies, inverse filtering runs on the unwindowed signals with zero state.
// Throws DegenerateFrame for silent frames and InvalidArgument when the frame
// is shorter than 4 * Nv samples.
SourceFilterDecomposition iaif_decompose(std::span<const double> frame, int sample_rate,
                                         const AnalysisConfig& cfg);
SourceFilterDecomposition gfm_iaif_decompose(std::span<const double> frame,
                                             int sample_rate, const AnalysisConfig& cfg);
SourceFilterDecomposition iop_iaif_decompose(std::span<const double> frame,
                                             int sample_rate, const AnalysisConfig& cfg);
SourceFilterDecomposition decompose_frame(Method method, std::span<const double> frame,
                                          int sample_rate, const AnalysisConfig& cfg);

// Speech inverse-filtered by lip, glottis and vocal tract.
std::vector<double> excitation_residual(std::span<const double> frame,
                                        const SourceFilterDecomposition& d);
// Runs the residual back through glottis, vocal tract and lip filters.
std::vector<double> reconstruct(std::span<const double> residual,
                                const SourceFilterDecomposition& d);

// Normalized autocorrelation peak over lags [fs/f_max, fs/f_min].
struct Periodicity {
  double peak = 0.0;      // in [-1, 1]
  double lag = 0.0;       // interpolated, samples
};
Periodicity periodicity(std::span<const double> frame, int sample_rate, double f_min_hz,
                        double f_max_hz);

struct FrameResult {
  std::size_t start_index = 0;
  SourceFilterDecomposition decomposition;
};

struct UtteranceDecomposition {
  Method method = Method::kGfmIaif;
  int sample_rate = 0;
  std::size_t frame_length = 0;
  std::size_t hop = 0;
  std::size_t total_frames = 0;
  std::vector<FrameResult> frames;  // voiced frames only
  // Whole-utterance derivative: centred hop-length segments of every voiced
  // frame, zeros elsewhere. [voiced_begin, voiced_end) spans the written part.
  std::vector<double> glottal_flow_derivative;
  std::size_t voiced_begin = 0;
  std::size_t voiced_end = 0;
};

// Frames the buffer, keeps frames that pass the voicing gate and decomposes
// them. Throws NoVoicedFrames when nothing passes.
UtteranceDecomposition decompose_utterance(const AudioBuffer& buf, Method method,
                                           const AnalysisConfig& cfg);

}  // namespace glottkit
