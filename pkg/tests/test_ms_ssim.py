"""
Tests for MS-SSIM and the P6 image format.
"""

import logging

import numpy as np
import pytest
from numpy.lib.stride_tricks import sliding_window_view

from metrics.images import ImageRaster, parse_ppm, serialize_ppm
from metrics.ms_ssim import MsSsimSettings, ms_ssim, ms_ssim_loss, ssim_components
from utils.config import Config
from utils.errors import InputError

WEIGHTS = np.array([0.0448, 0.2856, 0.3001, 0.2363, 0.1333])


def reference_ms_ssim(x: ImageRaster, y: ImageRaster) -> float:
    """Dense 2-D window sums, written independently of the separable filter."""
    offsets = np.arange(11) - 5.0
    taps = np.exp(-offsets ** 2 / 4.5)
    kernel = np.outer(taps, taps) / taps.sum() ** 2
    c1, c2 = (0.01 * 255) ** 2, (0.03 * 255) ** 2

    def local_mean(plane):
        return np.einsum('ijkl,kl->ij', sliding_window_view(plane, (11, 11)), kernel)

    def pool(plane):
        h, w = (plane.shape[0] // 2) * 2, (plane.shape[1] // 2) * 2
        return plane[:h, :w].reshape(h // 2, 2, w // 2, 2).mean(axis=(1, 3))

    scores = []
    for channel in range(3):
        a = x.samples[:, :, channel].astype(np.float64)
        b = y.samples[:, :, channel].astype(np.float64)
        score = 1.0
        for scale in range(5):
            mu_a, mu_b = local_mean(a), local_mean(b)
            var_a = local_mean(a * a) - mu_a ** 2
            var_b = local_mean(b * b) - mu_b ** 2
            cov = local_mean(a * b) - mu_a * mu_b
            cs = (2 * cov + c2) / (var_a + var_b + c2)
            if scale < 4:
                score *= max(cs.mean(), 0.0) ** WEIGHTS[scale]
                a, b = pool(a), pool(b)
            else:
                lum = (2 * mu_a * mu_b + c1) / (mu_a ** 2 + mu_b ** 2 + c1)
                score *= max((lum * cs).mean(), 0.0) ** WEIGHTS[scale]
        scores.append(score)
    return float(np.mean(scores))


def random_image(rng, size=256):
    return ImageRaster(rng.integers(0, 256, size=(size, size, 3), dtype=np.uint8))


def noisy(rng, image, spread):
    values = image.samples.astype(np.float64) + rng.normal(0.0, spread, size=image.samples.shape)
    return ImageRaster(np.clip(np.round(values), 0, 255).astype(np.uint8))


def smooth_image(rng, size=256):
    coarse = rng.integers(0, 256, size=(size // 16, size // 16, 3)).astype(np.float64)
    return ImageRaster(np.kron(coarse, np.ones((16, 16, 1))).astype(np.uint8))


def test_identity(rng):
    image = random_image(rng)
    assert ms_ssim(image, image) == pytest.approx(1.0, abs=1e-9)
    assert ms_ssim_loss(image, image) == pytest.approx(0.0, abs=1e-9)


def test_more_noise_scores_lower(rng):
    for index in range(20):
        image = random_image(rng) if index % 2 else smooth_image(rng)
        assert ms_ssim(image, noisy(rng, image, 5.0)) > ms_ssim(image, noisy(rng, image, 25.0))


def test_matches_dense_reference(rng):
    for index in range(20):
        x = random_image(rng) if index % 2 else smooth_image(rng)
        y = noisy(rng, x, float(rng.uniform(2.0, 40.0)))
        assert ms_ssim(x, y) == pytest.approx(reference_ms_ssim(x, y), abs=1e-6)


def test_symmetric_and_bounded(rng):
    x = random_image(rng)
    y = noisy(rng, x, 30.0)
    loss = ms_ssim_loss(x, y)
    assert loss == pytest.approx(ms_ssim_loss(y, x), abs=1e-9)
    assert 0.0 <= loss <= 1.0


def test_translation_invariance(rng):
    patch = rng.integers(0, 256, size=(64, 64, 3))
    damaged = np.clip(patch + rng.normal(0.0, 20.0, size=patch.shape), 0, 255)

    def scene(content, offset):
        canvas = np.full((512, 512, 3), 100.0)
        canvas[offset:offset + 64, offset:offset + 64] = content
        return ImageRaster(np.round(canvas).astype(np.uint8))

    at_rest = ms_ssim(scene(patch, 224), scene(damaged, 224))
    shifted = ms_ssim(scene(patch, 240), scene(damaged, 240))
    assert at_rest < 1.0
    assert at_rest == pytest.approx(shifted, abs=1e-9)


def test_five_scales_of_components(rng):
    image = random_image(rng, 192)
    components = ssim_components(image.channel(0), image.channel(0))
    assert len(components.ssim) == len(components.contrast_structure) == 5


def test_undersized_images_rejected(rng):
    image = random_image(rng, 64)
    with pytest.raises(InputError, match="176"):
        ms_ssim(image, image)


def test_scale_reduction(rng, caplog):
    x = random_image(rng, 64)
    y = noisy(rng, x, 10.0)
    settings = MsSsimSettings(allow_scale_reduction=True)
    with caplog.at_level(logging.WARNING):
        score = ms_ssim(x, y, settings)
    assert "from 5 to 3 scales" in caplog.text
    assert 0.0 < score < 1.0
    assert ms_ssim(x, x, settings) == pytest.approx(1.0, abs=1e-9)


def test_too_small_even_for_one_scale(rng):
    image = random_image(rng, 8)
    with pytest.raises(InputError):
        ms_ssim(image, image, MsSsimSettings(allow_scale_reduction=True))


def test_size_mismatch(rng):
    with pytest.raises(InputError):
        ms_ssim(random_image(rng, 192), random_image(rng, 200))


def test_settings_from_config():
    config = Config()
    config.set('metrics.ms_ssim.allow_scale_reduction', True)
    settings = MsSsimSettings.from_config(config)
    assert settings.allow_scale_reduction
    assert settings.c1 == pytest.approx(6.5025)
    assert settings.c2 == pytest.approx(58.5225)


class TestPpm:
    def test_round_trip(self, rng):
        image = random_image(rng, 5)
        parsed = parse_ppm(serialize_ppm(image))
        assert np.array_equal(parsed.samples, image.samples)

    def test_header_comments(self):
        data = b"P6\n# written by hand\n2 1\n255\n" + bytes([1, 2, 3, 4, 5, 6])
        image = parse_ppm(data)
        assert image.shape == (1, 2)
        assert image.samples[0, 1].tolist() == [4, 5, 6]

    def test_rejects_other_maxval(self):
        with pytest.raises(InputError):
            parse_ppm(b"P6 1 1 65535\n" + bytes(6))

    def test_rejects_wrong_size(self):
        with pytest.raises(InputError):
            parse_ppm(b"P6 2 2 255\n" + bytes(11))

    def test_rejects_other_magic(self):
        with pytest.raises(InputError):
            parse_ppm(b"P3 1 1 255\n0 0 0\n")


class TestImageRaster:
    def test_float_samples_are_rounded(self):
        assert ImageRaster(np.full((1, 1, 3), 12.7)).samples[0, 0, 0] == 13
        assert ImageRaster(np.full((1, 1, 3), 12.4)).samples[0, 0, 0] == 12
        assert ImageRaster(np.full((1, 1, 3), 254.6)).samples[0, 0, 0] == 255

    def test_rejects_out_of_range_samples(self):
        for samples in (np.full((1, 1, 3), 255.5), np.full((1, 1, 3), -0.5),
                        np.full((1, 1, 3), 300), np.full((1, 1, 3), -1)):
            with pytest.raises(InputError):
                ImageRaster(samples)
