"""
End-to-end tests of the command line through ``main.main``.
"""

import logging

import numpy as np
import pytest

from main import main
from coding.latent import load_latent, save_latent
from entropy.gllmm import GllmmParams
from entropy.model import EntropyModel
from entropy.model_file import load_model, save_model
from metrics.dists import FeatureStack, save_features
from metrics.images import ImageRaster, save_ppm
from rdo.report import CSV_HEADER
from rdo.synthetic import synth_hyper_latents, synth_latents


@pytest.fixture(autouse=True)
def drop_cli_log_handlers():
    yield
    root = logging.getLogger()
    for handler in list(root.handlers):
        if getattr(handler, '_gllmm_codec', False):
            root.removeHandler(handler)


@pytest.fixture
def run(capsys):
    """Run the CLI and return (exit code, summary dict, stderr text)."""
    def _run(*argv):
        code = main([str(a) for a in argv])
        captured = capsys.readouterr()
        summary = dict(line.split('=', 1) for line in captured.out.splitlines() if '=' in line)
        return code, summary, captured.err
    return _run


@pytest.fixture
def cli_model(tmp_path, run):
    path = tmp_path / "model.glmp"
    code, _, _ = run("gen-model", "--channels", 8, "--seed", 1, "--output", path)
    assert code == 0
    return path


def smooth_image(seed, size=256):
    rng = np.random.default_rng(seed)
    coarse = rng.integers(0, 256, size=(size // 16, size // 16, 3)).astype(np.float64)
    return ImageRaster(np.kron(coarse, np.ones((16, 16, 1))).astype(np.uint8))


class TestGenModel:
    def test_deterministic(self, tmp_path, run):
        first, second = tmp_path / "a.glmp", tmp_path / "b.glmp"
        code, summary, _ = run("gen-model", "--seed", 4, "--output", first)
        assert code == 0
        assert summary["counts"] == "3,3,3"
        assert summary["valid"] == "true"
        assert summary["sets"] == "8"
        run("gen-model", "--seed", 4, "--output", second)
        assert first.read_bytes() == second.read_bytes()

    def test_text_and_per_entry(self, tmp_path, run):
        path = tmp_path / "entry.yaml"
        code, summary, _ = run("gen-model", "--channels", 2, "--layout", "per_entry",
                               "--entry-size", "3x4", "--counts", "1,2,3", "--text",
                               "--output", path)
        assert code == 0
        assert summary["sets"] == "24"
        model = load_model(str(path))
        assert model.entry_shape == (2, 3, 4)
        assert model.gllmm_sets[0].counts == (1, 2, 3)

    def test_validate(self, cli_model, run):
        code, summary, err = run("validate", "--model", cli_model)
        assert code == 0
        assert summary["valid"] == "true"
        assert summary["violations"] == "0"
        assert err == ""


class TestCoding:
    def test_round_trip(self, tmp_path, cli_model, run):
        container = tmp_path / "y.glc"
        decoded = tmp_path / "y.gltn"
        code, summary, _ = run("compress", "--model", cli_model, "--synthetic", "8x16x16",
                               "--seed", 7, "--output", container)
        assert code == 0
        assert summary["symbols"] == "2048"
        assert int(summary["actual_bits"]) == 8 * container.stat().st_size
        assert summary["tier"] in ("low", "mid", "high")

        code, summary, _ = run("decompress", "--input", container, "--model", cli_model,
                               "--output", decoded)
        assert code == 0
        assert summary["shape"] == "8x16x16"
        expected = synth_latents(load_model(str(cli_model)), (8, 16, 16), seed=7)
        assert load_latent(str(decoded)) == expected

    def test_latent_file_input(self, tmp_path, cli_model, run):
        model = load_model(str(cli_model))
        latent = synth_latents(model, (8, 4, 8), seed=2)
        source = save_latent(latent, str(tmp_path / "in.gltn"))
        container, decoded = tmp_path / "c.glc", tmp_path / "out.gltn"
        assert run("compress", "--model", cli_model, "--input", source, "--output", container)[0] == 0
        assert run("decompress", "--input", container, "--model", cli_model,
                   "--output", decoded)[0] == 0
        assert load_latent(str(decoded)) == latent

    def test_hyper_round_trip(self, tmp_path, cli_model, run):
        model = load_model(str(cli_model))
        hyper = synth_hyper_latents(model.hyperprior, model.z_shape((8, 16, 16)), model.z_alphabet, 5)
        hyper_path = save_latent(hyper, str(tmp_path / "z.gltn"))
        container = tmp_path / "yz.glc"
        code, summary, _ = run("compress", "--model", cli_model, "--synthetic", "8x16x16",
                               "--hyper-input", hyper_path, "--output", container)
        assert code == 0
        assert summary["symbols"] == str(2048 + hyper.size)

        code, summary, _ = run("decompress", "--input", container, "--model", cli_model,
                               "--output", tmp_path / "y.gltn", "--hyper-output", tmp_path / "z2.gltn")
        assert code == 0
        assert summary["hyper_symbols"] == str(hyper.size)
        assert load_latent(str(tmp_path / "z2.gltn")) == hyper

    def test_deterministic(self, tmp_path, cli_model, run):
        first, second = tmp_path / "1.glc", tmp_path / "2.glc"
        run("compress", "--model", cli_model, "--synthetic", "8x16x16", "--seed", 7, "--output", first)
        run("compress", "--model", cli_model, "--synthetic", "8x16x16", "--seed", 7, "--output", second)
        assert first.read_bytes() == second.read_bytes()

    def test_invalid_model(self, tmp_path, cli_model, run):
        model = load_model(str(cli_model))
        broken = GllmmParams([0.5, 0.5, 0.5], [[1.0, 0.0, 1.0]], [[1.0, 0.0, 1.0]], [[1.0, 0.0, 1.0]])
        invalid = EntropyModel(
            gllmm_sets=(broken,) + model.gllmm_sets[1:],
            layout=model.layout,
            channels=model.channels,
            y_alphabet=model.y_alphabet,
            z_alphabet=model.z_alphabet,
            hyperprior=model.hyperprior,
        )
        path = save_model(invalid, str(tmp_path / "invalid.glmp"))
        code, summary, err = run("compress", "--model", path, "--synthetic", "8x16x16",
                                 "--output", tmp_path / "x.glc")
        assert code == 3
        assert summary == {}
        assert "error[validation]" in err
        assert "family-weight-sum" in err

        code, summary, err = run("validate", "--model", path)
        assert code == 3
        assert summary["valid"] == "false"
        assert "error[validation]: set[0].family_weights: family-weight-sum" in err

    def test_truncated_container(self, tmp_path, cli_model, run):
        container = tmp_path / "y.glc"
        run("compress", "--model", cli_model, "--synthetic", "8x16x16", "--seed", 7,
            "--output", container)
        container.write_bytes(container.read_bytes()[:-1])
        code, _, err = run("decompress", "--input", container, "--model", cli_model,
                           "--output", tmp_path / "y.gltn")
        assert code == 5
        assert err.startswith("error[corruption]")

    def test_wrong_model(self, tmp_path, cli_model, run):
        other = tmp_path / "other.glmp"
        run("gen-model", "--seed", 2, "--output", other)
        container = tmp_path / "y.glc"
        run("compress", "--model", cli_model, "--synthetic", "8x16x16", "--output", container)
        code, _, err = run("decompress", "--input", container, "--model", other,
                           "--output", tmp_path / "y.gltn")
        assert code == 7
        assert "error[model-mismatch]" in err
        assert not (tmp_path / "y.gltn").exists()

    def test_missing_input(self, tmp_path, cli_model, run):
        code, _, err = run("decompress", "--input", tmp_path / "absent.glc", "--model", cli_model,
                           "--output", tmp_path / "y.gltn")
        assert code == 2
        assert err.startswith("error[io]")

    def test_missing_config(self, tmp_path, cli_model, run):
        code, _, err = run("--config", tmp_path / "absent.yaml", "validate", "--model", cli_model)
        assert code == 2
        assert "error[io]" in err

    def test_config_overrides_precision(self, tmp_path, cli_model, run):
        config = tmp_path / "config.yaml"
        config.write_text("coding:\n  precision_bits: 12\n")
        container = tmp_path / "y.glc"
        assert run("--config", config, "compress", "--model", cli_model, "--synthetic", "8x8x8",
                   "--output", container)[0] == 0
        code, _, _ = run("--config", config, "decompress", "--input", container,
                         "--model", cli_model, "--output", tmp_path / "y.gltn")
        assert code == 0

    def test_unreadable_config(self, tmp_path, cli_model, run):
        config = tmp_path / "config.ini"
        config.write_text("[coding]\n")
        code, _, err = run("--config", config, "validate", "--model", cli_model)
        assert code == 1
        assert err.startswith("error[config]")


class TestMetrics:
    def test_identical_images(self, tmp_path, run):
        path = save_ppm(smooth_image(1), str(tmp_path / "a.ppm"))
        code, summary, _ = run("metrics", "--reference", path, "--distorted", path)
        assert code == 0
        assert float(summary["ms_ssim"]) == pytest.approx(1.0, abs=1e-9)
        assert float(summary["combined"]) == pytest.approx(0.0, abs=1e-9)
        assert summary["dists"] == "absent"
        assert summary["dists_term"] == "omitted"
        assert summary["k_ms"] == "23.90625"

    def test_with_features(self, tmp_path, run):
        reference = save_ppm(smooth_image(1), str(tmp_path / "a.ppm"))
        distorted = save_ppm(smooth_image(2), str(tmp_path / "b.ppm"))
        rng = np.random.default_rng(0)
        fx = save_features(str(tmp_path / "a.dftr"), FeatureStack((rng.normal(size=(3, 5, 5)),)))
        fy = save_features(str(tmp_path / "b.dftr"), FeatureStack((rng.normal(size=(3, 5, 5)),)))
        code, summary, _ = run("metrics", "--reference", reference, "--distorted", distorted,
                               "--features-reference", fx, "--features-distorted", fy,
                               "--k-ms", 10)
        assert code == 0
        assert summary["dists_term"] == "included"
        expected = 10.0 * float(summary["ms_ssim_loss"]) + float(summary["dists"])
        assert float(summary["combined"]) == pytest.approx(expected, rel=1e-8)

    def test_undersized_images(self, tmp_path, run):
        path = save_ppm(smooth_image(1, size=64), str(tmp_path / "small.ppm"))
        code, _, err = run("metrics", "--reference", path, "--distorted", path)
        assert code == 6
        assert err.startswith("error[input]")
        code, summary, _ = run("metrics", "--reference", path, "--distorted", path,
                               "--allow-scale-reduction")
        assert code == 0
        assert float(summary["ms_ssim"]) == pytest.approx(1.0, abs=1e-9)


class TestRdReport:
    def test_empty_manifest(self, tmp_path, cli_model, run):
        manifest = tmp_path / "manifest.yaml"
        manifest.write_text("inputs: []\n")
        out = tmp_path / "report.csv"
        code, summary, _ = run("rd-report", "--input", manifest, "--model", cli_model,
                               "--output", out)
        assert code == 0
        assert summary["rows"] == "0"
        assert out.read_text() == ",".join(CSV_HEADER) + "\n"

    def test_default_lambdas(self, tmp_path, cli_model, run):
        manifest = tmp_path / "manifest.yaml"
        manifest.write_text("inputs:\n  - id: s\n    synthetic: 8x8x8\n    seed: 1\n")
        out = tmp_path / "report.csv"
        code, summary, _ = run("rd-report", "--input", manifest, "--model", cli_model,
                               "--output", out)
        assert code == 0
        assert summary["rows"] == "3"
        assert summary["lambdas"] == "2,1,0.5"
        assert len(out.read_text().splitlines()) == 4

    def test_lambda_flag(self, tmp_path, cli_model, run):
        manifest = tmp_path / "manifest.yaml"
        manifest.write_text("inputs:\n  - id: s\n    synthetic: 8x8x8\n")
        code, summary, _ = run("rd-report", "--input", manifest, "--model", cli_model,
                               "--lambda", "4,0.25", "--output", tmp_path / "r.csv")
        assert code == 0
        assert summary["rows"] == "2"

    def test_all_inputs_failed(self, tmp_path, cli_model, run):
        manifest = tmp_path / "manifest.yaml"
        manifest.write_text("inputs:\n  - id: gone\n    latent: gone.gltn\n")
        out = tmp_path / "report.csv"
        code, summary, err = run("rd-report", "--input", manifest, "--model", cli_model,
                                 "--output", out)
        assert code == 1
        assert summary["failed_rows"] == "3"
        assert "error[sweep]: gone: error:io" in err
        assert out.exists()

    def test_scale_reduction_flag(self, tmp_path, cli_model, run):
        image = save_ppm(smooth_image(1, size=64), str(tmp_path / "small.ppm"))
        manifest = tmp_path / "manifest.yaml"
        manifest.write_text(
            "inputs:\n"
            "  - id: small\n"
            "    synthetic: 8x4x4\n"
            f"    reference: {image}\n"
            f"    distorted: {image}\n"
        )
        out = tmp_path / "report.csv"
        code, summary, err = run("rd-report", "--input", manifest, "--model", cli_model,
                                 "--output", out)
        assert code == 1
        assert "error[sweep]: small: error:input" in err

        code, summary, _ = run("rd-report", "--input", manifest, "--model", cli_model,
                               "--allow-scale-reduction", "--output", out)
        assert code == 0
        assert summary["failed_rows"] == "0"
        statuses = [line.split(",")[-1] for line in out.read_text().splitlines()[1:]]
        assert statuses == ["partial:no-dists"] * 3
