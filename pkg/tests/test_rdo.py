"""
Tests for rate estimation, synthetic latents, manifests and lambda sweeps.
"""

import csv
import io
import math

import numpy as np
import pytest

from coding.latent import LatentTensor, save_latent
from entropy.alphabet import DiscreteDistribution
from entropy.gllmm import GllmmParams, discretized_masses, mixture_entropy_bits
from entropy.model import EntropyModel
from entropy.symbol_map import SymbolMap
from metrics.dists import FeatureStack, save_features
from metrics.images import ImageRaster, save_ppm
from rdo.manifest import load_manifest, parse_shape
from rdo.objective import (
    RdoConfig,
    bpp,
    bpp_tier,
    lambda_list,
    rate_bits,
    rd_cost,
    symbol_bits,
)
from rdo.report import CSV_HEADER, RdInput
from rdo.sweep import rd_sweep
from rdo.synthetic import generate_model, synth_latents
from utils.errors import InputError, ParameterDomainError


def single_set_model(params, channels=1):
    base = generate_model(channels, seed=0)
    return EntropyModel(
        gllmm_sets=(params,) * channels,
        layout=base.layout,
        channels=channels,
        y_alphabet=base.y_alphabet,
        z_alphabet=base.z_alphabet,
        hyperprior=base.hyperprior,
    )


def smooth_image(seed, size=256):
    rng = np.random.default_rng(seed)
    coarse = rng.integers(0, 256, size=(size // 16, size // 16, 3)).astype(np.float64)
    return ImageRaster(np.kron(coarse, np.ones((16, 16, 1))).astype(np.uint8))


def parse_csv(text):
    return list(csv.DictReader(io.StringIO(text)))


class TestObjective:
    def test_bpp(self):
        assert bpp(80000, 512, 512) == pytest.approx(0.3051758, abs=1e-7)
        assert bpp(0, 64, 32) == 0.0
        with pytest.raises(ParameterDomainError):
            bpp(10, 0, 5)

    def test_rd_cost(self):
        assert rd_cost(0.0, 0.0, 1.0) == 0.0
        assert rd_cost(2.5906250, 80000, 0.5) == pytest.approx(40002.5906250, abs=1e-9)
        assert rd_cost(1.0, 200.0, 0.5) >= rd_cost(1.0, 100.0, 0.5)
        with pytest.raises(ParameterDomainError):
            rd_cost(1.0, 1.0, 0.0)

    def test_uniform_rate(self, byte_alphabet, rng):
        shape = (1, 100, 100)
        tensor = LatentTensor(rng.integers(-128, 128, size=shape), byte_alphabet)
        dists = SymbolMap.shared(DiscreteDistribution.uniform(byte_alphabet), shape)
        assert float(symbol_bits(tensor, dists).sum()) == 80000.0

    def test_floor_bounds_rate(self, byte_alphabet, rng):
        model = single_set_model(GllmmParams.single("gaussian", spread=1e-6), channels=2)
        tensor = LatentTensor(rng.integers(-128, 128, size=(2, 10, 10)), byte_alphabet)
        assert rate_bits(tensor, model) <= 200 * 16 + 1e-6

    def test_rate_is_additive(self, small_model):
        tensor = synth_latents(small_model, (8, 16, 16), seed=5)
        top = LatentTensor(tensor.values[:, :8], tensor.alphabet)
        bottom = LatentTensor(tensor.values[:, 8:], tensor.alphabet)
        total = rate_bits(tensor, small_model)
        assert total == pytest.approx(rate_bits(top, small_model) + rate_bits(bottom, small_model),
                                      rel=1e-12)

    def test_empirical_rate_matches_entropy(self):
        model = generate_model(1, seed=21)
        tensor = synth_latents(model, (1, 100, 1000), seed=8)
        entropy = mixture_entropy_bits(model.gllmm_sets[0], model.y_alphabet)
        per_symbol = rate_bits(tensor, model) / tensor.size
        assert per_symbol == pytest.approx(entropy, rel=0.01)

    def test_tiers_and_lambdas(self):
        assert bpp_tier(0.3) == "mid"
        assert bpp_tier(0.1) == "low"
        assert bpp_tier(0.9) == "high"
        assert list(lambda_list("2,1,0.5")) == [2.0, 1.0, 0.5]
        with pytest.raises(ParameterDomainError):
            lambda_list("2,x")

    def test_config_rejects_bad_lambdas(self):
        with pytest.raises(ParameterDomainError):
            RdoConfig(lambdas=(1.0, -0.5))
        assert RdoConfig().lambdas == (2.0, 1.0, 0.5)
        assert RdoConfig().k_ms == 23.90625


class TestSynthetic:
    def test_deterministic(self, small_model):
        first = synth_latents(small_model, (8, 4, 4), seed=7)
        assert synth_latents(small_model, (8, 4, 4), seed=7) == first
        assert synth_latents(small_model, (8, 4, 4), seed=8) != first

    def test_frequencies_follow_model(self):
        params = GllmmParams.single("gaussian", spread=0.1)
        model = single_set_model(params)
        count = 1_000_000
        tensor = synth_latents(model, (1, 1000, 1000), seed=13)
        masses = discretized_masses(params, model.y_alphabet)
        probabilities = masses / masses.sum()
        counts = np.bincount(tensor.flat() - model.y_alphabet.min_symbol,
                             minlength=model.y_alphabet.span)
        for index in np.flatnonzero(probabilities >= 1e-3):
            p = probabilities[index]
            assert abs(counts[index] / count - p) <= 3.0 * math.sqrt(p * (1.0 - p) / count)

    def test_point_mass(self):
        model = single_set_model(GllmmParams.single("gaussian", mean=2.0, spread=1e-6))
        tensor = synth_latents(model, (1, 50, 50), seed=0)
        assert np.all(tensor.values == 2)

    def test_invalid_model(self):
        broken = GllmmParams([0.5, 0.5, 0.5], [[1.0, 0.0, 1.0]], [[1.0, 0.0, 1.0]], [[1.0, 0.0, 1.0]])
        with pytest.raises(ParameterDomainError):
            synth_latents(single_set_model(broken), (1, 2, 2), seed=0)


class TestSweep:
    def make_input(self, model, input_id, seed):
        image = smooth_image(seed)
        features = FeatureStack((np.random.default_rng(seed).normal(size=(4, 6, 6)),))
        return RdInput(
            input_id=input_id,
            latent=synth_latents(model, (8, 16, 16), seed),
            reference=image,
            distorted=image,
            features_reference=features,
            features_distorted=features,
        )

    def test_identical_pair(self, small_model):
        report = rd_sweep([self.make_input(small_model, "a", 1)], small_model)
        assert [row.lam for row in report.rows] == [2.0, 1.0, 0.5]
        for row in report.rows:
            assert row.status == "ok"
            assert row.combined == pytest.approx(0.0, abs=1e-9)
            assert row.rd_cost == pytest.approx(row.lam * row.bits, abs=1e-9)
            assert row.bpp == pytest.approx(row.bits / (256 * 256))

    def test_rows_recompute(self, small_model):
        item = self.make_input(small_model, "b", 2)
        item.distorted = smooth_image(3)
        report = rd_sweep([item], small_model)
        for row in parse_csv(report.to_csv()):
            recomputed = float(row["combined"]) + float(row["lambda"]) * float(row["bits"])
            assert float(row["rd_cost"]) == pytest.approx(recomputed, rel=1e-8)
            assert float(row["combined"]) > 0.0

    def test_order_independent(self, small_model):
        inputs = [self.make_input(small_model, name, seed)
                  for name, seed in (("zeta", 4), ("alpha", 5), ("mid", 6))]
        forward = rd_sweep(inputs, small_model).to_csv()
        backward = rd_sweep(inputs[::-1], small_model).to_csv()
        assert forward == backward
        assert [row["input"] for row in parse_csv(forward)][::3] == ["alpha", "mid", "zeta"]

    def test_lambda_override(self, small_model):
        report = rd_sweep([self.make_input(small_model, "a", 1)], small_model, lambdas=[0.25])
        assert len(report.rows) == 1
        assert report.metadata["lambdas"] == [0.25]

    def test_partial_statuses(self, small_model):
        latent = synth_latents(small_model, (8, 16, 16), seed=1)
        image = smooth_image(1)
        features = FeatureStack((np.ones((2, 3, 3)) + np.arange(9).reshape(1, 3, 3),))
        inputs = [
            RdInput("rate", latent),
            RdInput("images", latent, reference=image, distorted=image),
            RdInput("features", latent, features_reference=features, features_distorted=features),
        ]
        statuses = {row.input_id: row.status for row in rd_sweep(inputs, small_model).rows}
        assert statuses == {
            "rate": "partial:rate-only",
            "images": "partial:no-dists",
            "features": "partial:no-ms-ssim",
        }
        rows = parse_csv(rd_sweep([inputs[0]], small_model).to_csv())
        assert rows[0]["combined"] == "" and rows[0]["ms_ssim"] == ""
        assert float(rows[0]["rd_cost"]) == pytest.approx(2.0 * float(rows[0]["bits"]), rel=1e-8)

    def test_failed_inputs_become_rows(self, tmp_path, small_model):
        manifest = tmp_path / "inputs.yaml"
        manifest.write_text(
            "inputs:\n"
            "  - id: missing\n"
            "    latent: nowhere.gltn\n"
            "  - id: empty\n"
            "  - id: good\n"
            "    synthetic: 8x4x4\n"
            "    seed: 3\n"
        )
        report = rd_sweep(load_manifest(str(manifest)), small_model)
        statuses = [(row.input_id, row.status) for row in report.rows]
        assert statuses == [("empty", "error:input")] * 3 + [("good", "partial:rate-only")] * 3 \
            + [("missing", "error:io")] * 3
        assert report.failed_rows == 6
        failed = parse_csv(report.to_csv())[0]
        assert failed["bits"] == "" and failed["lambda"] == "2"


class TestManifest:
    def test_resolves_relative_paths(self, tmp_path, small_model):
        latent = synth_latents(small_model, (8, 16, 16), seed=1)
        image = smooth_image(1)
        features = FeatureStack((np.random.default_rng(0).normal(size=(2, 4, 4)),))
        data = tmp_path / "data"
        save_latent(latent, str(data / "y.gltn"))
        save_ppm(image, str(data / "ref.ppm"))
        save_features(str(data / "ref.dftr"), features)
        manifest = tmp_path / "manifest.yaml"
        manifest.write_text(
            "inputs:\n"
            "  - id: kodim\n"
            "    latent: data/y.gltn\n"
            "    reference: data/ref.ppm\n"
            "    distorted: data/ref.ppm\n"
            "    features_reference: data/ref.dftr\n"
            "    features_distorted: data/ref.dftr\n"
        )
        entries = load_manifest(str(manifest))
        assert entries[0].latent == str(data / "y.gltn")
        loaded = entries[0].load(small_model)
        assert loaded.latent == latent
        assert loaded.has_images and loaded.has_features

        report = rd_sweep(entries, small_model)
        assert [row.status for row in report.rows] == ["ok"] * 3

    def test_empty_manifest(self, tmp_path):
        path = tmp_path / "empty.yaml"
        path.write_text("")
        assert load_manifest(str(path)) == []
        path.write_text("inputs: []\n")
        assert load_manifest(str(path)) == []

    def test_entry_needs_id(self, tmp_path):
        path = tmp_path / "bad.yaml"
        path.write_text("inputs:\n  - latent: y.gltn\n")
        with pytest.raises(InputError):
            load_manifest(str(path))

    def test_parse_shape(self):
        assert parse_shape("8x16x16") == (8, 16, 16)
        with pytest.raises(InputError):
            parse_shape("8x16")

    def test_empty_sweep_writes_header(self, tmp_path, small_model):
        report = rd_sweep([], small_model)
        path = report.write_csv(str(tmp_path / "out" / "report.csv"))
        with open(path, encoding='utf-8') as f:
            assert f.read() == ",".join(CSV_HEADER) + "\n"
