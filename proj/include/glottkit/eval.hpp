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
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "glottkit/features.hpp"
#include "glottkit/gif.hpp"
#include "glottkit/manifest.hpp"
#include "glottkit/stats.hpp"

#include <json.hpp>

namespace glottkit {

// Per-stimulus summary of one utterance decomposition.
struct StimulusAnalysis {
  GlottalParams params;  // medians over voiced frames
  SpectralFeatures features;
  std::size_t voiced_frames = 0;
  std::size_t total_frames = 0;
  std::size_t degenerate_tilt_frames = 0;
};

StimulusAnalysis analyze_stimulus(const AudioBuffer& buf, Method method,
                                  const AnalysisConfig& cfg);
// Frame medians of the glottal parameters; features are left empty.
StimulusAnalysis summarize(const UtteranceDecomposition& decomposition);

struct ResultRow {
  std::size_t stimulus = 0;  // index into the manifest
  std::filesystem::path path;
  std::string vowel;
  Effort effort = Effort::kSoft;
  std::string speaker;
  Method method = Method::kGfmIaif;
  bool ok = false;
  std::string error;
  StimulusAnalysis analysis;
  std::optional<GlottalParams> ground_truth;
};

// Absolute errors against ground truth, when the row has one.
struct ParamErrors {
  double fg = 0.0;
  double bg = 0.0;
  double fst = 0.0;
};
std::optional<ParamErrors> absolute_errors(const ResultRow& row);

// Rows ordered by stimulus, then method. Per-row failures are recorded, not
// thrown. threads == 0 uses GLOTTKIT_THREADS or the hardware concurrency.
// Throws InvalidArgument for an empty manifest or method list, and
// InvalidArgument as well when every row failed.
std::vector<ResultRow> run_corpus(const CorpusManifest& manifest,
                                  const std::vector<Method>& methods,
                                  const AnalysisConfig& cfg, unsigned threads = 0);

unsigned default_thread_count();

enum class Feature { kH1H2, kHrf, kSt, kFg, kBg, kFst };
std::string_view to_string(Feature f);
Feature feature_from_string(std::string_view s);
double feature_value(const ResultRow& row, Feature f);

inline constexpr Feature kSpectralFeatures[] = {Feature::kH1H2, Feature::kHrf, Feature::kSt};
inline constexpr Feature kAllFeatures[] = {Feature::kFg,   Feature::kBg,  Feature::kFst,
                                           Feature::kH1H2, Feature::kHrf, Feature::kSt};

using EffortPair = std::pair<Effort, Effort>;
inline constexpr EffortPair kAllPairs[] = {{Effort::kSoft, Effort::kMedium},
                                           {Effort::kMedium, Effort::kLoud},
                                           {Effort::kSoft, Effort::kLoud}};
std::string pair_label(const EffortPair& pair);  // "S-M", "M-L", "S-L"

inline constexpr double kSignificanceLevel = 1e-3;

struct RankSumResult {
  Method method = Method::kGfmIaif;
  Feature feature = Feature::kSt;
  EffortPair pair{Effort::kSoft, Effort::kLoud};
  double statistic = 0.0;  // U of the first class
  double p_value = 1.0;
  double normalized = 1.0;
  bool significant = false;
  bool exact = false;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
};

struct DistributionSummary {
  Method method = Method::kGfmIaif;
  Feature feature = Feature::kFg;
  Effort effort = Effort::kSoft;
  Quartiles quartiles;
};

struct TruthErrorSummary {
  Method method = Method::kGfmIaif;
  Feature feature = Feature::kFg;  // fg, bg or fst
  double median_abs_error = 0.0;
  double median_rel_error = 0.0;
  std::size_t n = 0;
};

struct DiscriminationReport {
  std::vector<RankSumResult> rows;
  std::vector<DistributionSummary> distributions;
  std::vector<std::pair<Method, std::size_t>> excluded;  // failed rows per method
  std::vector<TruthErrorSummary> truth_errors;           // empty without ground truth
};

// One rank-sum row per method x feature x pair, in that nesting order.
// Failed rows are excluded and counted. Throws InvalidArgument when a class
// named in pairs has fewer than two successful rows for some method.
DiscriminationReport discrimination_report(
    const std::vector<ResultRow>& results, const std::vector<Method>& methods,
    const std::vector<Feature>& features = {std::begin(kSpectralFeatures),
                                            std::end(kSpectralFeatures)},
    const std::vector<EffortPair>& pairs = {std::begin(kAllPairs), std::end(kAllPairs)});

void write_results_csv(const std::filesystem::path& path, const std::vector<ResultRow>& rows,
                       const std::string& metadata = {});
void write_distributions_csv(const std::filesystem::path& path,
                             const DiscriminationReport& report,
                             const std::string& metadata = {});
nlohmann::json report_to_json(const DiscriminationReport& report);

}  // namespace glottkit
