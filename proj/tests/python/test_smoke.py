# Copyright 2026 The glottkit Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math

import numpy as np
import pytest

import glottkit


def test_version_and_config():
    assert glottkit.__version__ == "0.1.0"
    cfg = glottkit.AnalysisConfig()
    assert cfg.lip_d == pytest.approx(0.99)
    assert cfg.resolved_vt_order(22050) == 26
    cfg.lip_d = 1.5
    with pytest.raises(glottkit.InvalidArgument):
        cfg.validate()
    assert issubclass(glottkit.InvalidArgument, glottkit.GlottkitError)


def test_lpc_recovers_ar2():
    rng = np.random.default_rng(3)
    e = rng.standard_normal(20000)
    x = np.zeros_like(e)
    for n in range(len(e)):
        x[n] = e[n] + 1.3 * (x[n - 1] if n > 0 else 0) - 0.6 * (x[n - 2] if n > 1 else 0)
    a, gain = glottkit.lpc(x, 2)
    assert a == pytest.approx([1.0, -1.3, 0.6], abs=0.03)
    assert gain > 0


def test_params_roundtrip():
    a = glottkit.glottis_from_params(150.0, 80.0, 800.0, 22050.0)
    p = glottkit.glottal_params(a, 22050.0)
    assert p["fg"] == pytest.approx(150.0, rel=1e-9)
    assert p["bg"] == pytest.approx(80.0, rel=1e-9)
    assert p["fst"] == pytest.approx(800.0, rel=1e-9)
    assert not p["tilt_degenerate"]


def test_synthesize_and_analyze():
    s = glottkit.synthesize(seed=5)
    assert s["period_samples"] == 100
    assert np.max(np.abs(s["clean"])) == pytest.approx(0.5)
    for method in glottkit.METHODS:
        r = glottkit.analyze(s["audio"], s["sample_rate"], method)
        assert r["voiced_frames"] > 0
        assert all(math.isfinite(r["params"][k]) for k in ("fg", "bg", "fst"))
        assert r["features"]["f0"] == pytest.approx(220.5, rel=0.02)
        assert len(r["glottal_flow_derivative"]) == len(s["audio"])


def test_decompose_frame_gross_order():
    s = glottkit.synthesize(noise_floor_db=-math.inf)
    frame = s["audio"][:706]
    d = glottkit.decompose_frame(frame, 22050, "gfm-iaif")
    assert len(d["pre_emphasis"]) == 4
    assert len(d["glottis"]["coefficients"]) == 4
    with pytest.raises(glottkit.DegenerateFrame):
        glottkit.decompose_frame(np.zeros(706), 22050, "iaif")


def test_wav_roundtrip(tmp_path):
    x = 0.25 * np.sin(2 * np.pi * 440 * np.arange(2205) / 22050)
    path = tmp_path / "tone.wav"
    glottkit.write_wav(path, x, 22050, "comment")
    y, fs = glottkit.load_wav(path)
    assert fs == 22050
    assert np.max(np.abs(y - x)) < 1e-4
    with pytest.raises(glottkit.IoError):
        glottkit.load_wav(tmp_path / "missing.wav")


def test_rank_sum():
    u, p, exact = glottkit.wilcoxon_rank_sum([1.0, 2.0, 3.0], [4.0, 5.0, 6.0])
    assert u == 0.0 and exact
    assert p == pytest.approx(0.1)
    assert glottkit.normalized_rank_sum([1.0, 2.0], [1.0, 2.0]) == pytest.approx(1.0)


def test_harmonic_features():
    fs = 22050.0
    t = np.arange(4410) / fs
    x = np.sin(2 * np.pi * 200 * t) + 0.5 * np.sin(2 * np.pi * 400 * t)
    f = glottkit.spectral_features(x, 200.0, fs)
    assert f["h1h2"] == pytest.approx(20 * math.log10(2), abs=0.1)


def test_corpus_and_evaluate(tmp_path):
    manifest = glottkit.make_effort_corpus(tmp_path, per_class=3, seed=11)
    assert manifest.exists()
    report = glottkit.evaluate(manifest, ["gfm-iaif"])
    assert len(report["rank_sum"]) == 9
    assert all(0.0 <= row["p_value"] <= 1.0 for row in report["rank_sum"])
