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

// Python bindings for the glottkit core, exposed as glottkit._core.

#include <span>
#include <string>
#include <vector>

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "glottkit/config.hpp"
#include "glottkit/error.hpp"
#include "glottkit/eval.hpp"
#include "glottkit/features.hpp"
#include "glottkit/gif.hpp"
#include "glottkit/lpc.hpp"
#include "glottkit/stats.hpp"
#include "glottkit/synth.hpp"
#include "glottkit/wav.hpp"

namespace py = pybind11;
using namespace glottkit;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

std::vector<double> to_vector(const Array& a) {
  if (a.ndim() != 1) throw InvalidArgument("expected a one-dimensional array");
  return {a.data(), a.data() + a.size()};
}

Array to_array(const std::vector<double>& v) {
  Array out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

py::dict params_dict(const GlottalParams& p) {
  py::dict d;
  d["fg"] = p.fg;
  d["bg"] = p.bg;
  d["fst"] = p.fst;
  d["tilt_degenerate"] = p.tilt_degenerate;
  d["formant_from_real_poles"] = p.formant_from_real_poles;
  return d;
}

py::dict features_dict(const SpectralFeatures& f) {
  py::dict d;
  d["h1h2"] = f.h1h2;
  d["hrf"] = f.hrf;
  d["st"] = f.st;
  d["f0"] = f.f0;
  return d;
}

py::dict model_dict(const LpcModel& m) {
  py::dict d;
  d["coefficients"] = to_array(m.polynomial.coefficients());
  d["gain"] = m.gain;
  return d;
}

py::dict decomposition_dict(const SourceFilterDecomposition& d, int sample_rate) {
  py::dict out;
  out["method"] = std::string(to_string(d.method));
  out["glottis"] = model_dict(d.glottis);
  out["vocal_tract"] = model_dict(d.vocal_tract);
  out["pre_emphasis"] = to_array(d.pre_emphasis.coefficients());
  out["lip_d"] = d.lip_d;
  out["glottal_flow_derivative"] = to_array(d.glottal_flow_derivative);
  out["glottal_flow"] = to_array(d.glottal_flow);
  out["params"] = params_dict(glottal_params_from_poles(d.glottis, sample_rate));
  return out;
}

LpcModel model_from(const Array& coefficients, double gain = 1.0) {
  LpcModel m;
  m.polynomial = PolynomialFilter(to_vector(coefficients));
  m.gain = gain;
  return m;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Glottal inverse filtering (IAIF, GFM-IAIF, IOP-IAIF), features and statistics";
  m.attr("__version__") = std::string(kVersion);

  auto base = py::register_exception<Error>(m, "GlottkitError", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<IoError>(m, "IoError", base.ptr());
  py::register_exception<DegenerateFrame>(m, "DegenerateFrame", base.ptr());
  py::register_exception<NoVoicedFrames>(m, "NoVoicedFrames", base.ptr());
  py::register_exception<NumericalFailure>(m, "NumericalFailure", base.ptr());

  py::class_<AnalysisConfig>(m, "AnalysisConfig")
      .def(py::init<>())
      .def_readwrite("lip_d", &AnalysisConfig::lip_d)
      .def_readwrite("vt_order", &AnalysisConfig::vt_order)
      .def_readwrite("glottis_fine_order", &AnalysisConfig::glottis_fine_order)
      .def_readwrite("frame_len_ms", &AnalysisConfig::frame_len_ms)
      .def_readwrite("hop_fraction", &AnalysisConfig::hop_fraction)
      .def_readwrite("iop_gain_threshold", &AnalysisConfig::iop_gain_threshold)
      .def_readwrite("max_iop_order", &AnalysisConfig::max_iop_order)
      .def_readwrite("voicing_rms_floor_db", &AnalysisConfig::voicing_rms_floor_db)
      .def_readwrite("voicing_threshold", &AnalysisConfig::voicing_threshold)
      .def_readwrite("f0_min_hz", &AnalysisConfig::f0_min_hz)
      .def_readwrite("f0_max_hz", &AnalysisConfig::f0_max_hz)
      .def("validate", &AnalysisConfig::validate)
      .def("resolved_vt_order", &AnalysisConfig::resolved_vt_order)
      .def("hash", [](const AnalysisConfig& c) { return config_hash(c); })
      .def("__repr__", [](const AnalysisConfig& c) { return format_config(c); })
      .def_static("parse", [](const std::string& text) { return parse_config(text); })
      .def_static("load", [](const std::filesystem::path& p) { return load_config(p); });

  m.def(
      "load_wav",
      [](const std::filesystem::path& path) {
        const auto buf = load_wav(path);
        return py::make_tuple(to_array(buf.samples), buf.sample_rate);
      },
      py::arg("path"), "Read a WAV file; returns (samples, sample_rate).");
  m.def(
      "write_wav",
      [](const std::filesystem::path& path, const Array& samples, int sample_rate,
         const std::string& comment) {
        write_wav(path, AudioBuffer{to_vector(samples), sample_rate}, comment);
      },
      py::arg("path"), py::arg("samples"), py::arg("sample_rate"), py::arg("comment") = "");

  m.def(
      "lpc",
      [](const Array& x, std::size_t order) {
        const auto model = lpc_analyze(to_vector(x), order);
        return py::make_tuple(to_array(model.polynomial.coefficients()), model.gain);
      },
      py::arg("x"), py::arg("order"), "Autocorrelation LPC; returns (coefficients, gain).");
  m.def(
      "levinson_durbin",
      [](const Array& r, std::size_t order) {
        const auto model = levinson_durbin(to_vector(r), order);
        return py::make_tuple(to_array(model.polynomial.coefficients()), model.gain);
      },
      py::arg("r"), py::arg("order"));
  m.def(
      "frequency_response",
      [](const Array& coefficients, double gain, std::size_t n_points, double sample_rate) {
        const auto r = frequency_response(model_from(coefficients, gain), n_points, sample_rate);
        return py::make_tuple(to_array(r.frequencies_hz), to_array(r.magnitude_db));
      },
      py::arg("coefficients"), py::arg("gain"), py::arg("n_points"), py::arg("sample_rate"));

  m.def(
      "decompose_frame",
      [](const Array& frame, int sample_rate, const std::string& method,
         const AnalysisConfig& cfg) {
        return decomposition_dict(
            decompose_frame(method_from_string(method), to_vector(frame), sample_rate, cfg),
            sample_rate);
      },
      py::arg("frame"), py::arg("sample_rate"), py::arg("method") = "gfm-iaif",
      py::arg("config") = AnalysisConfig{});
  m.def(
      "analyze",
      [](const Array& samples, int sample_rate, const std::string& method,
         const AnalysisConfig& cfg) {
        const AudioBuffer buf{to_vector(samples), sample_rate};
        const auto method_id = method_from_string(method);
        std::vector<double> derivative;
        StimulusAnalysis a;
        {
          py::gil_scoped_release release;
          a = analyze_stimulus(buf, method_id, cfg);
          derivative = decompose_utterance(buf, method_id, cfg).glottal_flow_derivative;
        }
        py::dict d;
        d["params"] = params_dict(a.params);
        d["features"] = features_dict(a.features);
        d["voiced_frames"] = a.voiced_frames;
        d["total_frames"] = a.total_frames;
        d["glottal_flow_derivative"] = to_array(derivative);
        return d;
      },
      py::arg("samples"), py::arg("sample_rate"), py::arg("method") = "gfm-iaif",
      py::arg("config") = AnalysisConfig{},
      "Decompose an utterance; per-frame glottal parameters are summarized by their medians.");

  m.def(
      "glottal_params",
      [](const Array& coefficients, double sample_rate) {
        return params_dict(glottal_params_from_poles(model_from(coefficients), sample_rate));
      },
      py::arg("coefficients"), py::arg("sample_rate"));
  m.def(
      "glottis_from_params",
      [](double fg, double bg, double fst, double sample_rate) {
        return to_array(glottis_from_params({fg, bg, fst}, sample_rate).polynomial.coefficients());
      },
      py::arg("fg"), py::arg("bg"), py::arg("fst"), py::arg("sample_rate"));
  m.def(
      "spectral_features",
      [](const Array& derivative, double f0, double sample_rate) {
        return features_dict(spectral_features(to_vector(derivative), f0, sample_rate));
      },
      py::arg("derivative"), py::arg("f0"), py::arg("sample_rate"));
  m.def(
      "harmonic_amplitudes",
      [](const Array& x, double f0, double sample_rate) {
        const auto h = harmonic_amplitudes(to_vector(x), f0, sample_rate);
        return py::make_tuple(to_array(h.frequencies_hz), to_array(h.amplitudes_db));
      },
      py::arg("x"), py::arg("f0"), py::arg("sample_rate"));
  m.def(
      "estimate_f0",
      [](const Array& samples, int sample_rate, double f_min, double f_max) {
        F0Options opt;
        opt.f_min_hz = f_min;
        opt.f_max_hz = f_max;
        const auto t = estimate_f0(AudioBuffer{to_vector(samples), sample_rate}, opt);
        return py::make_tuple(to_array(t.times_s), to_array(t.f0_hz), t.median_hz);
      },
      py::arg("samples"), py::arg("sample_rate"), py::arg("f_min") = 60.0,
      py::arg("f_max") = 500.0, "Returns (times_s, f0_hz, median_hz); unvoiced frames are 0.");

  m.def(
      "synthesize",
      [](double f0, double fg, double bg, double fst, double duration_s, double noise_floor_db,
         std::uint64_t seed, int sample_rate) {
        SynthSpec spec;
        spec.f0 = f0;
        spec.params = {fg, bg, fst};
        spec.duration_s = duration_s;
        spec.noise_floor_db = noise_floor_db;
        spec.seed = seed;
        spec.sample_rate = sample_rate;
        const auto s = synthesize(spec);
        py::dict d;
        d["audio"] = to_array(s.audio.samples);
        d["clean"] = to_array(s.clean);
        d["glottal_flow"] = to_array(s.glottal_flow);
        d["glottal_flow_derivative"] = to_array(s.glottal_flow_derivative);
        d["glottis"] = to_array(s.glottis.polynomial.coefficients());
        d["vocal_tract"] = to_array(s.vocal_tract.polynomial.coefficients());
        d["sample_rate"] = s.audio.sample_rate;
        d["period_samples"] = s.period_samples;
        return d;
      },
      py::arg("f0") = 220.5, py::arg("fg") = 150.0, py::arg("bg") = 80.0, py::arg("fst") = 800.0,
      py::arg("duration_s") = 1.0, py::arg("noise_floor_db") = -60.0, py::arg("seed") = 0,
      py::arg("sample_rate") = 22050);
  m.def(
      "make_effort_corpus",
      [](const std::filesystem::path& out_dir, int per_class, std::uint64_t seed, double jitter) {
        CorpusOptions opt;
        opt.n_per_class = per_class;
        opt.seed = seed;
        opt.jitter = jitter;
        make_effort_corpus(SynthSpec{}, default_effort_classes(), opt, out_dir,
                           metadata_line(AnalysisConfig{}, seed));
        return out_dir / "manifest.csv";
      },
      py::arg("out_dir"), py::arg("per_class") = 20, py::arg("seed") = 1, py::arg("jitter") = 0.1,
      "Write the synthetic effort corpus; returns the manifest path.");
  m.def(
      "evaluate_json",
      [](const std::filesystem::path& manifest_path, const std::vector<std::string>& methods,
         const AnalysisConfig& cfg) {
        std::vector<Method> ids;
        for (const auto& name : methods) ids.push_back(method_from_string(name));
        std::string out;
        {
          py::gil_scoped_release release;
          const auto manifest = read_manifest(manifest_path);
          validate_manifest(manifest);
          const auto rows = run_corpus(manifest, ids, cfg);
          out = report_to_json(discrimination_report(rows, ids)).dump();
        }
        return out;
      },
      py::arg("manifest"), py::arg("methods"), py::arg("config") = AnalysisConfig{});

  m.def(
      "wilcoxon_rank_sum",
      [](const Array& x, const Array& y) {
        const auto t = wilcoxon_rank_sum(to_vector(x), to_vector(y));
        return py::make_tuple(t.u, t.p_value, t.exact);
      },
      py::arg("x"), py::arg("y"), "Two-sided rank-sum test; returns (U, p_value, exact).");
  m.def(
      "normalized_rank_sum",
      [](const Array& x, const Array& y) { return normalized_rank_sum(to_vector(x), to_vector(y)); },
      py::arg("x"), py::arg("y"));
}
