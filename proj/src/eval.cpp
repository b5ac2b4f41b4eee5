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

#include "glottkit/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "glottkit/error.hpp"
#include "glottkit/wav.hpp"

namespace glottkit {
namespace {

F0Options f0_options(const AnalysisConfig& cfg) {
  F0Options o;
  o.f_min_hz = cfg.f0_min_hz;
  o.f_max_hz = cfg.f0_max_hz;
  o.voicing_threshold = cfg.voicing_threshold;
  o.rms_floor_db = cfg.voicing_rms_floor_db;
  return o;
}

std::vector<double> values_for(const std::vector<const ResultRow*>& rows, Feature f) {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto* r : rows) out.push_back(feature_value(*r, f));
  return out;
}

}  // namespace

StimulusAnalysis summarize(const UtteranceDecomposition& dec) {
  StimulusAnalysis out;
  out.voiced_frames = dec.frames.size();
  out.total_frames = dec.total_frames;
  std::vector<double> fg, bg, fst;
  for (const auto& f : dec.frames) {
    const auto p = glottal_params_from_poles(f.decomposition.glottis, dec.sample_rate);
    fg.push_back(p.fg);
    bg.push_back(p.bg);
    fst.push_back(p.fst);
    if (p.tilt_degenerate) ++out.degenerate_tilt_frames;
  }
  out.params.fg = median(fg);
  out.params.bg = median(bg);
  out.params.fst = median(fst);
  out.params.tilt_degenerate = 2 * out.degenerate_tilt_frames > out.voiced_frames;
  return out;
}

StimulusAnalysis analyze_stimulus(const AudioBuffer& buf, Method method,
                                  const AnalysisConfig& cfg) {
  const auto dec = decompose_utterance(buf, method, cfg);
  auto out = summarize(dec);
  const double f0 = estimate_f0(buf, f0_options(cfg)).median_hz;
  const std::span<const double> voiced(dec.glottal_flow_derivative.data() + dec.voiced_begin,
                                       dec.voiced_end - dec.voiced_begin);
  out.features = spectral_features(voiced, f0, buf.sample_rate);
  return out;
}

std::optional<ParamErrors> absolute_errors(const ResultRow& row) {
  if (!row.ok || !row.ground_truth) return std::nullopt;
  return ParamErrors{std::abs(row.analysis.params.fg - row.ground_truth->fg),
                     std::abs(row.analysis.params.bg - row.ground_truth->bg),
                     std::abs(row.analysis.params.fst - row.ground_truth->fst)};
}

unsigned default_thread_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("GLOTTKIT_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) n = std::min<unsigned>(n, static_cast<unsigned>(v));
  }
  return n;
}

std::vector<ResultRow> run_corpus(const CorpusManifest& manifest,
                                  const std::vector<Method>& methods,
                                  const AnalysisConfig& cfg, unsigned threads) {
  if (manifest.rows.empty()) throw InvalidArgument("empty manifest");
  if (methods.empty()) throw InvalidArgument("no methods requested");
  cfg.validate();

  const std::size_t n_methods = methods.size();
  std::vector<ResultRow> rows(manifest.rows.size() * n_methods);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < manifest.rows.size(); i = next++) {
      const auto& rec = manifest.rows[i];
      std::optional<AudioBuffer> buf;
      std::string load_error;
      try {
        buf = load_wav(rec.path);
      } catch (const std::exception& e) {
        load_error = e.what();
      }
      for (std::size_t m = 0; m < n_methods; ++m) {
        ResultRow& row = rows[i * n_methods + m];
        row.stimulus = i;
        row.path = rec.path;
        row.vowel = rec.vowel;
        row.effort = rec.effort;
        row.speaker = rec.speaker;
        row.method = methods[m];
        row.ground_truth = rec.ground_truth;
        if (!buf) {
          row.error = load_error;
          continue;
        }
        try {
          row.analysis = analyze_stimulus(*buf, methods[m], cfg);
          row.ok = true;
        } catch (const std::exception& e) {
          row.error = e.what();
        }
      }
    }
  };

  if (threads == 0) threads = default_thread_count();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(manifest.rows.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  if (std::none_of(rows.begin(), rows.end(), [](const ResultRow& r) { return r.ok; })) {
    throw InvalidArgument("every stimulus failed; first error: " + rows.front().error);
  }
  return rows;
}

std::string_view to_string(Feature f) {
  switch (f) {
    case Feature::kH1H2:
      return "h1h2";
    case Feature::kHrf:
      return "hrf";
    case Feature::kSt:
      return "st";
    case Feature::kFg:
      return "fg";
    case Feature::kBg:
      return "bg";
    case Feature::kFst:
      return "fst";
  }
  return "unknown";
}

Feature feature_from_string(std::string_view s) {
  for (auto f : kAllFeatures) {
    if (to_string(f) == s) return f;
  }
  if (s == "h1-h2") return Feature::kH1H2;
  throw InvalidArgument("unknown feature: " + std::string(s));
}

double feature_value(const ResultRow& row, Feature f) {
  const auto& a = row.analysis;
  switch (f) {
    case Feature::kH1H2:
      return a.features.h1h2;
    case Feature::kHrf:
      return a.features.hrf;
    case Feature::kSt:
      return a.features.st;
    case Feature::kFg:
      return a.params.fg;
    case Feature::kBg:
      return a.params.bg;
    case Feature::kFst:
      return a.params.fst;
  }
  return 0.0;
}

std::string pair_label(const EffortPair& pair) {
  auto letter = [](Effort e) {
    switch (e) {
      case Effort::kSoft:
        return 'S';
      case Effort::kMedium:
        return 'M';
      case Effort::kLoud:
        return 'L';
    }
    return '?';
  };
  return std::string{letter(pair.first), '-', letter(pair.second)};
}

DiscriminationReport discrimination_report(const std::vector<ResultRow>& results,
                                           const std::vector<Method>& methods,
                                           const std::vector<Feature>& features,
                                           const std::vector<EffortPair>& pairs) {
  if (methods.empty()) throw InvalidArgument("no methods requested");
  DiscriminationReport report;
  for (Method method : methods) {
    std::map<Effort, std::vector<const ResultRow*>> by_class;
    std::size_t failed = 0;
    bool any_truth = false;
    for (const auto& r : results) {
      if (r.method != method) continue;
      if (!r.ok) {
        ++failed;
        continue;
      }
      by_class[r.effort].push_back(&r);
      any_truth = any_truth || r.ground_truth.has_value();
    }
    report.excluded.emplace_back(method, failed);

    std::size_t populated = 0;
    for (const auto& [effort, rows] : by_class) populated += rows.empty() ? 0 : 1;
    if (populated < 2) {
      throw InvalidArgument("method " + std::string(to_string(method)) +
                            ": fewer than two effort classes populated");
    }

    for (Feature feature : features) {
      for (const auto& pair : pairs) {
        const auto& a = by_class[pair.first];
        const auto& b = by_class[pair.second];
        if (a.size() < 2 || b.size() < 2) {
          throw InvalidArgument("method " + std::string(to_string(method)) + ": class pair " +
                                pair_label(pair) + " has a missing or undersized class");
        }
        const auto x = values_for(a, feature);
        const auto y = values_for(b, feature);
        const auto test = wilcoxon_rank_sum(x, y);
        RankSumResult row;
        row.method = method;
        row.feature = feature;
        row.pair = pair;
        row.statistic = test.u;
        row.p_value = test.p_value;
        const double total = static_cast<double>(x.size() * y.size());
        row.normalized = 2.0 * std::min(test.u, total - test.u) / total;
        row.significant = test.p_value < kSignificanceLevel;
        row.exact = test.exact;
        row.n1 = x.size();
        row.n2 = y.size();
        report.rows.push_back(row);
      }
    }

    for (Feature feature : kAllFeatures) {
      for (Effort effort : kAllEfforts) {
        const auto it = by_class.find(effort);
        if (it == by_class.end() || it->second.empty()) continue;
        report.distributions.push_back(
            {method, feature, effort, quartiles(values_for(it->second, feature))});
      }
    }

    if (any_truth) {
      for (Feature feature : {Feature::kFg, Feature::kBg, Feature::kFst}) {
        std::vector<double> abs_err, rel_err;
        for (const auto& [effort, rows] : by_class) {
          for (const auto* r : rows) {
            if (!r->ground_truth) continue;
            const double truth = feature == Feature::kFg   ? r->ground_truth->fg
                                 : feature == Feature::kBg ? r->ground_truth->bg
                                                           : r->ground_truth->fst;
            const double err = std::abs(feature_value(*r, feature) - truth);
            abs_err.push_back(err);
            rel_err.push_back(err / truth);
          }
        }
        if (abs_err.empty()) continue;
        TruthErrorSummary s;
        s.method = method;
        s.feature = feature;
        s.n = abs_err.size();
        s.median_abs_error = median(abs_err);
        s.median_rel_error = median(rel_err);
        report.truth_errors.push_back(s);
      }
    }
  }
  return report;
}

void write_results_csv(const std::filesystem::path& path, const std::vector<ResultRow>& rows,
                       const std::string& metadata) {
  std::ostringstream os;
  os.precision(10);
  if (!metadata.empty()) os << "# " << metadata << '\n';
  os << "stimulus,path,vowel,effort,speaker,method,status,error,f0,fg,bg,fst,h1h2,hrf,st,"
        "voiced_frames,total_frames,degenerate_tilt_frames,fg_true,bg_true,fst_true,"
        "fg_abs_err,bg_abs_err,fst_abs_err\n";
  auto clean = [](std::string s) {
    std::replace(s.begin(), s.end(), ',', ';');
    std::replace(s.begin(), s.end(), '\n', ' ');
    return s;
  };
  for (const auto& r : rows) {
    os << r.stimulus << ',' << clean(r.path.generic_string()) << ',' << clean(r.vowel) << ','
       << to_string(r.effort) << ',' << clean(r.speaker) << ',' << to_string(r.method) << ','
       << (r.ok ? "ok" : "error") << ',' << clean(r.error) << ',';
    if (r.ok) {
      const auto& a = r.analysis;
      os << a.features.f0 << ',' << a.params.fg << ',' << a.params.bg << ',' << a.params.fst
         << ',' << a.features.h1h2 << ',' << a.features.hrf << ',' << a.features.st << ','
         << a.voiced_frames << ',' << a.total_frames << ',' << a.degenerate_tilt_frames;
    } else {
      os << ",,,,,,,,,";
    }
    if (r.ground_truth) {
      os << ',' << r.ground_truth->fg << ',' << r.ground_truth->bg << ',' << r.ground_truth->fst;
    } else {
      os << ",,,";
    }
    if (const auto e = absolute_errors(r)) {
      os << ',' << e->fg << ',' << e->bg << ',' << e->fst;
    } else {
      os << ",,,";
    }
    os << '\n';
  }
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << os.str();
}

void write_distributions_csv(const std::filesystem::path& path,
                             const DiscriminationReport& report, const std::string& metadata) {
  std::ostringstream os;
  os.precision(10);
  if (!metadata.empty()) os << "# " << metadata << '\n';
  os << "method,feature,effort,n,q1,median,q3\n";
  for (const auto& d : report.distributions) {
    os << to_string(d.method) << ',' << to_string(d.feature) << ',' << to_string(d.effort) << ','
       << d.quartiles.n << ',' << d.quartiles.q1 << ',' << d.quartiles.median << ','
       << d.quartiles.q3 << '\n';
  }
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << os.str();
}

nlohmann::json report_to_json(const DiscriminationReport& report) {
  nlohmann::json j;
  j["significance_level"] = kSignificanceLevel;
  auto& rows = j["rank_sum"] = nlohmann::json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"method", to_string(r.method)},
                    {"feature", to_string(r.feature)},
                    {"pair", pair_label(r.pair)},
                    {"statistic", r.statistic},
                    {"p_value", r.p_value},
                    {"normalized", r.normalized},
                    {"significant", r.significant},
                    {"exact", r.exact},
                    {"n1", r.n1},
                    {"n2", r.n2}});
  }
  auto& excluded = j["excluded"] = nlohmann::json::object();
  for (const auto& [method, n] : report.excluded) excluded[std::string(to_string(method))] = n;
  auto& dist = j["distributions"] = nlohmann::json::array();
  for (const auto& d : report.distributions) {
    dist.push_back({{"method", to_string(d.method)},
                    {"feature", to_string(d.feature)},
                    {"effort", to_string(d.effort)},
                    {"n", d.quartiles.n},
                    {"q1", d.quartiles.q1},
                    {"median", d.quartiles.median},
                    {"q3", d.quartiles.q3}});
  }
  if (!report.truth_errors.empty()) {
    auto& errs = j["ground_truth_errors"] = nlohmann::json::array();
    for (const auto& e : report.truth_errors) {
      errs.push_back({{"method", to_string(e.method)},
                      {"feature", to_string(e.feature)},
                      {"n", e.n},
                      {"median_abs_error", e.median_abs_error},
                      {"median_rel_error", e.median_rel_error}});
    }
  }
  return j;
}

}  // namespace glottkit
