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

// glottkit command-line tool: analyze, synth-corpus, evaluate, inspect.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "glottkit/config.hpp"
#include "glottkit/error.hpp"
#include "glottkit/eval.hpp"
#include "glottkit/gif.hpp"
#include "glottkit/synth.hpp"
#include "glottkit/wav.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace glottkit;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUser = 1;
constexpr int kExitNumerical = 2;
constexpr std::size_t kEnvelopePoints = 1024;

struct ConfigFlags {
  std::string config_file;
  std::optional<double> lip_d;
  std::optional<int> vt_order;
  std::optional<double> frame_len_ms;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--config", config_file, "Analysis config file (key = value)")
        ->check(CLI::ExistingFile);
    cmd->add_option("--lip-d", lip_d, "Lip radiation coefficient (overrides config)");
    cmd->add_option("--vt-order", vt_order, "Vocal tract LPC order (overrides config)");
    cmd->add_option("--frame-ms", frame_len_ms, "Frame length in ms (overrides config)");
  }

  AnalysisConfig resolve() const {
    AnalysisConfig cfg;
    if (!config_file.empty()) cfg = load_config(config_file);
    if (lip_d) cfg.lip_d = *lip_d;
    if (vt_order) cfg.vt_order = *vt_order;
    if (frame_len_ms) cfg.frame_len_ms = *frame_len_ms;
    cfg.validate();
    return cfg;
  }
};

std::vector<Method> parse_methods(const std::vector<std::string>& names) {
  std::vector<Method> out;
  for (const auto& joined : names) {
    std::stringstream ss(joined);
    std::string name;
    while (std::getline(ss, name, ',')) {
      if (name.empty()) continue;
      if (name == "all") {
        out.assign(std::begin(kAllMethods), std::end(kAllMethods));
        return out;
      }
      const Method m = method_from_string(name);
      if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
    }
  }
  if (out.empty()) throw InvalidArgument("no methods given");
  return out;
}

json config_json(const AnalysisConfig& cfg, int sample_rate) {
  json j;
  j["lip_d"] = cfg.lip_d;
  j["vt_order"] = sample_rate > 0 ? json(cfg.resolved_vt_order(sample_rate))
                                  : (cfg.vt_order ? json(*cfg.vt_order) : json("auto"));
  j["glottis_fine_order"] = cfg.glottis_fine_order;
  j["frame_len_ms"] = cfg.frame_len_ms;
  j["hop_fraction"] = cfg.hop_fraction;
  j["iop_gain_threshold"] = cfg.iop_gain_threshold;
  j["max_iop_order"] = cfg.max_iop_order;
  j["voicing_rms_floor_db"] = cfg.voicing_rms_floor_db;
  j["voicing_threshold"] = cfg.voicing_threshold;
  j["f0_min_hz"] = cfg.f0_min_hz;
  j["f0_max_hz"] = cfg.f0_max_hz;
  return j;
}

json metadata_json(const AnalysisConfig& cfg, std::uint64_t seed, int sample_rate) {
  return {{"tool", "glottkit"},
          {"version", std::string(kVersion)},
          {"config_hash", config_hash(cfg)},
          {"seed", seed},
          {"config", config_json(cfg, sample_rate)}};
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed: " + path.string());
}

// Files written so far by a subcommand; removed again when it fails.
class OutputSet {
 public:
  fs::path add(fs::path p) {
    paths_.push_back(p);
    return p;
  }
  void remove_all() noexcept {
    for (const auto& p : paths_) {
      std::error_code ec;
      fs::remove(p, ec);
    }
    paths_.clear();
  }

 private:
  std::vector<fs::path> paths_;
};

// ---- analyze ---------------------------------------------------------------

struct AnalyzeArgs {
  std::string input;
  std::string method = "gfm-iaif";
  std::string out_dir;
  ConfigFlags config;
};

void analyze_one(const AudioBuffer& buf, const fs::path& input, Method method,
                 const AnalysisConfig& cfg, const fs::path& out_dir, OutputSet& outputs) {
  const std::string meta = metadata_line(cfg, 0);
  const std::string stem = input.stem().string() + "_" + std::string(to_string(method));
  const auto dec = decompose_utterance(buf, method, cfg);
  auto stim = summarize(dec);
  F0Options f0opt;
  f0opt.f_min_hz = cfg.f0_min_hz;
  f0opt.f_max_hz = cfg.f0_max_hz;
  f0opt.voicing_threshold = cfg.voicing_threshold;
  f0opt.rms_floor_db = cfg.voicing_rms_floor_db;
  const double f0 = estimate_f0(buf, f0opt).median_hz;
  const std::span<const double> voiced(dec.glottal_flow_derivative.data() + dec.voiced_begin,
                                       dec.voiced_end - dec.voiced_begin);
  stim.features = spectral_features(voiced, f0, buf.sample_rate);

  // Per-frame parameters.
  {
    std::ostringstream os;
    os.precision(10);
    os << "# " << meta << '\n';
    os << "frame,start_s,fg,bg,fst,tilt_degenerate,formant_from_real_poles,pre_emphasis_order,"
          "glottis_gain,vocal_tract_gain\n";
    for (std::size_t i = 0; i < dec.frames.size(); ++i) {
      const auto& f = dec.frames[i];
      const auto p = glottal_params_from_poles(f.decomposition.glottis, buf.sample_rate);
      os << i << ',' << static_cast<double>(f.start_index) / buf.sample_rate << ',' << p.fg << ','
         << p.bg << ',' << p.fst << ',' << p.tilt_degenerate << ',' << p.formant_from_real_poles
         << ',' << f.decomposition.pre_emphasis.order() << ',' << f.decomposition.glottis.gain
         << ',' << f.decomposition.vocal_tract.gain << '\n';
    }
    write_text(outputs.add(out_dir / (stem + "_frames.csv")), os.str());
  }

  // Envelope responses averaged in dB over voiced frames.
  {
    std::vector<double> freqs, glottis_db(kEnvelopePoints, 0.0), vt_db(kEnvelopePoints, 0.0);
    for (const auto& f : dec.frames) {
      const auto g = frequency_response(f.decomposition.glottis, kEnvelopePoints, buf.sample_rate);
      const auto v =
          frequency_response(f.decomposition.vocal_tract, kEnvelopePoints, buf.sample_rate);
      freqs = g.frequencies_hz;
      for (std::size_t i = 0; i < kEnvelopePoints; ++i) {
        glottis_db[i] += g.magnitude_db[i] / static_cast<double>(dec.frames.size());
        vt_db[i] += v.magnitude_db[i] / static_cast<double>(dec.frames.size());
      }
    }
    const auto lip = lip_radiation(cfg.lip_d);
    std::ostringstream os;
    os.precision(10);
    os << "# " << meta << '\n';
    os << "frequency_hz,glottis_db,vocal_tract_db,lip_db\n";
    for (std::size_t i = 0; i < kEnvelopePoints; ++i) {
      const double omega = 2.0 * M_PI * freqs[i] / buf.sample_rate;
      const double lip_db = 20.0 * std::log10(std::abs(evaluate_on_unit_circle(lip, omega)));
      os << freqs[i] << ',' << glottis_db[i] << ',' << vt_db[i] << ',' << lip_db << '\n';
    }
    write_text(outputs.add(out_dir / (stem + "_envelopes.csv")), os.str());
  }

  // Glottal flow derivative, peak-normalized to 0.9.
  double peak = 0.0;
  for (double v : dec.glottal_flow_derivative) peak = std::max(peak, std::abs(v));
  const double scale = peak > 0.0 ? 0.9 / peak : 1.0;
  AudioBuffer out_wav{dec.glottal_flow_derivative, buf.sample_rate};
  for (double& v : out_wav.samples) v *= scale;
  write_wav(outputs.add(out_dir / (stem + "_derivative.wav")), out_wav, meta);

  json j;
  j["metadata"] = metadata_json(cfg, 0, buf.sample_rate);
  j["input"] = input.string();
  j["method"] = to_string(method);
  j["sample_rate"] = buf.sample_rate;
  j["frames"] = {{"voiced", stim.voiced_frames},
                 {"total", stim.total_frames},
                 {"degenerate_tilt", stim.degenerate_tilt_frames}};
  j["glottal_params"] = {{"fg_hz", stim.params.fg},
                         {"bg_hz", stim.params.bg},
                         {"fst_hz", stim.params.fst},
                         {"tilt_degenerate", stim.params.tilt_degenerate}};
  j["spectral_features"] = {{"f0_hz", stim.features.f0},
                            {"h1h2_db", stim.features.h1h2},
                            {"hrf_db", stim.features.hrf},
                            {"st_db_per_decade", stim.features.st}};
  j["derivative_wav_scale"] = scale;
  write_text(outputs.add(out_dir / (stem + "_features.json")), j.dump(2) + "\n");
}

int run_analyze(const AnalyzeArgs& args) {
  const auto cfg = args.config.resolve();
  const auto methods = parse_methods({args.method});
  const fs::path input(args.input);
  const auto buf = load_wav(input);
  const fs::path out_dir(args.out_dir);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());

  OutputSet outputs;
  try {
    for (Method m : methods) analyze_one(buf, input, m, cfg, out_dir, outputs);
  } catch (...) {
    outputs.remove_all();
    throw;
  }
  std::cout << "analyzed " << input.string() << " with " << methods.size() << " method(s) -> "
            << out_dir.string() << '\n';
  return kExitOk;
}

// ---- synth-corpus ------------------------------------------------------------

struct SynthArgs {
  std::string out_dir;
  int per_class = 20;
  std::uint64_t seed = 1;
  std::string classes_file;
  double jitter = 0.1;
  double f0 = 220.5;
  double duration = 1.0;
  double noise_db = -60.0;
};

std::array<EffortClass, 3> load_classes(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open classes file " + path.string());
  auto classes = default_effort_classes();
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::vector<std::string> cells;
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!header) {
      if (cells.size() != 4 || cells[0] != "effort" || cells[1] != "fg" || cells[2] != "bg" ||
          cells[3].rfind("fst", 0) != 0) {
        throw InvalidArgument("classes file header must be effort,fg,bg,fst");
      }
      header = true;
      continue;
    }
    if (cells.size() != 4) throw InvalidArgument("classes file: expected 4 fields per row");
    const Effort e = effort_from_string(cells[0]);
    auto& p = classes[static_cast<std::size_t>(e)].params;
    try {
      p.fg = std::stod(cells[1]);
      p.bg = std::stod(cells[2]);
      p.fst = std::stod(cells[3]);
    } catch (const std::exception&) {
      throw InvalidArgument("classes file: bad number in row '" + line + "'");
    }
  }
  return classes;
}

int run_synth(const SynthArgs& args) {
  SynthSpec base;
  base.f0 = args.f0;
  base.duration_s = args.duration;
  base.noise_floor_db = args.noise_db;
  base.validate();
  CorpusOptions opts;
  opts.n_per_class = args.per_class;
  opts.seed = args.seed;
  opts.jitter = args.jitter;
  const auto classes =
      args.classes_file.empty() ? default_effort_classes() : load_classes(args.classes_file);
  for (const auto& c : classes) glottis_from_params(c.params, base.sample_rate);

  const std::string meta = metadata_line(AnalysisConfig{}, args.seed);
  const auto manifest = make_effort_corpus(base, classes, opts, args.out_dir, meta);
  std::cout << "wrote " << manifest.rows.size() << " stimuli and manifest.csv to "
            << args.out_dir << '\n';
  return kExitOk;
}

// ---- evaluate ------------------------------------------------------------------

struct EvaluateArgs {
  std::string manifest;
  std::vector<std::string> methods{"all"};
  std::string out_dir;
  unsigned threads = 0;
  ConfigFlags config;
};

int run_evaluate(const EvaluateArgs& args) {
  const auto cfg = args.config.resolve();
  const auto methods = parse_methods(args.methods);
  const auto manifest = read_manifest(args.manifest);
  validate_manifest(manifest);
  const fs::path out_dir(args.out_dir);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());

  const auto rows = run_corpus(manifest, methods, cfg, args.threads);
  const auto report = discrimination_report(rows, methods);
  const std::string meta = metadata_line(cfg, 0);

  OutputSet outputs;
  try {
    write_results_csv(outputs.add(out_dir / "results.csv"), rows, meta);
    write_distributions_csv(outputs.add(out_dir / "distributions.csv"), report, meta);
    json j = report_to_json(report);
    j["metadata"] = metadata_json(cfg, 0, 0);
    j["manifest"] = args.manifest;
    j["methods"] = json::array();
    for (Method m : methods) j["methods"].push_back(to_string(m));
    write_text(outputs.add(out_dir / "discrimination.json"), j.dump(2) + "\n");
  } catch (...) {
    outputs.remove_all();
    throw;
  }

  std::size_t failed = 0;
  for (const auto& r : rows) failed += r.ok ? 0 : 1;
  std::printf("%-9s %-5s %-4s %10s %12s %s\n", "method", "feat", "pair", "normalized", "p_value",
              "sig");
  for (const auto& r : report.rows) {
    std::printf("%-9s %-5s %-4s %10.4f %12.4g %s\n", std::string(to_string(r.method)).c_str(),
                std::string(to_string(r.feature)).c_str(), pair_label(r.pair).c_str(),
                r.normalized, r.p_value, r.significant ? "*" : "");
  }
  std::cout << rows.size() << " result rows (" << failed << " failed) -> " << out_dir.string()
            << '\n';
  return kExitOk;
}

// ---- inspect -------------------------------------------------------------------

struct InspectArgs {
  std::string input;
  ConfigFlags config;
};

int run_inspect(const InspectArgs& args) {
  const auto cfg = args.config.resolve();
  WavInfo info;
  const auto buf = load_wav(args.input, &info);
  json j;
  j["input"] = args.input;
  j["sample_rate"] = buf.sample_rate;
  j["channels"] = info.channels;
  j["bits_per_sample"] = info.bits_per_sample;
  j["float"] = info.is_float;
  j["samples"] = buf.samples.size();
  j["duration_s"] = buf.duration_s();
  j["rms"] = rms(buf.samples);
  j["vt_order"] = cfg.resolved_vt_order(buf.sample_rate);
  j["frame_length"] = cfg.frame_length(buf.sample_rate);
  j["hop"] = cfg.hop_length(buf.sample_rate);
  F0Options f0opt;
  f0opt.f_min_hz = cfg.f0_min_hz;
  f0opt.f_max_hz = cfg.f0_max_hz;
  f0opt.voicing_threshold = cfg.voicing_threshold;
  f0opt.rms_floor_db = cfg.voicing_rms_floor_db;
  try {
    const auto track = estimate_f0(buf, f0opt);
    std::size_t voiced = 0;
    for (double f : track.f0_hz) voiced += f > 0.0 ? 1 : 0;
    j["f0_median_hz"] = track.median_hz;
    j["f0_voiced_frames"] = voiced;
    j["f0_frames"] = track.f0_hz.size();
  } catch (const NoVoicedFrames&) {
    j["f0_median_hz"] = nullptr;
    j["f0_voiced_frames"] = 0;
  }
  std::cout << j.dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"glottkit: glottal inverse filtering (IAIF, GFM-IAIF, IOP-IAIF) and evaluation"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1, 1);

  AnalyzeArgs analyze;
  auto* a = app.add_subcommand("analyze", "Decompose one WAV file and write plot data");
  a->add_option("--input", analyze.input, "Input WAV file")->required();
  a->add_option("--method", analyze.method, "iaif | gfm-iaif | iop-iaif | all")
      ->check(CLI::IsMember({"iaif", "gfm-iaif", "iop-iaif", "all"}));
  a->add_option("--out", analyze.out_dir, "Output directory")->required();
  analyze.config.add_to(a);

  SynthArgs synth;
  auto* s = app.add_subcommand("synth-corpus", "Write a synthetic soft/medium/loud corpus");
  s->add_option("--out", synth.out_dir, "Output directory")->required();
  s->add_option("--per-class", synth.per_class, "Stimuli per effort class")
      ->check(CLI::PositiveNumber);
  s->add_option("--seed", synth.seed, "Random seed");
  s->add_option("--classes", synth.classes_file, "CSV effort,fg,bg,fst overriding the defaults")
      ->check(CLI::ExistingFile);
  s->add_option("--jitter", synth.jitter, "Relative std of parameter jitter")
      ->check(CLI::Range(0.0, 1.0));
  s->add_option("--f0", synth.f0, "Fundamental frequency in Hz");
  s->add_option("--duration", synth.duration, "Stimulus duration in seconds")
      ->check(CLI::PositiveNumber);
  s->add_option("--noise-db", synth.noise_db, "White noise floor in dBFS");

  EvaluateArgs evaluate;
  auto* e = app.add_subcommand("evaluate", "Run all methods over a manifest and compare classes");
  e->add_option("--manifest", evaluate.manifest, "Corpus manifest CSV")->required();
  e->add_option("--methods", evaluate.methods, "Comma-separated methods or 'all'")
      ->delimiter(',');
  e->add_option("--out", evaluate.out_dir, "Output directory")->required();
  e->add_option("--threads", evaluate.threads, "Worker threads (default: GLOTTKIT_THREADS)");
  evaluate.config.add_to(e);

  InspectArgs inspect;
  auto* i = app.add_subcommand("inspect", "Print WAV header information and a pitch summary");
  i->add_option("--input", inspect.input, "Input WAV file")->required();
  inspect.config.add_to(i);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::CallForAllHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::CallForVersion& ex) {
    return app.exit(ex);
  } catch (const CLI::ParseError& ex) {
    app.exit(ex);
    return kExitUser;
  }

  try {
    if (*a) return run_analyze(analyze);
    if (*s) return run_synth(synth);
    if (*e) return run_evaluate(evaluate);
    if (*i) return run_inspect(inspect);
  } catch (const NumericalFailure& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return kExitNumerical;
  } catch (const Error& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return kExitUser;
  } catch (const std::exception& ex) {
    std::cerr << "internal error: " << ex.what() << '\n';
    return kExitNumerical;
  }
  return kExitUser;
}
