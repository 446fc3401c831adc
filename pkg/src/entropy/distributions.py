"""
Closed-form densities and cumulatives of the three GLLMM families.

All functions broadcast over numpy arrays and return a plain float for
scalar input. The Gaussian family is parameterized by its variance; the
Laplace and Logistic families by their natural scale (diversity b and
scale s respectively).
"""

import math
from typing import Union

import numpy as np
from scipy import special

from utils.errors import ParameterDomainError

ArrayLike = Union[float, np.ndarray]


def _check(x: ArrayLike, mean: ArrayLike, spread: ArrayLike, name: str):
    x = np.asarray(x, dtype=np.float64)
    mean = np.asarray(mean, dtype=np.float64)
    spread = np.asarray(spread, dtype=np.float64)
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(mean)) and np.all(np.isfinite(spread))):
        raise ParameterDomainError(f"{name}: arguments must be finite")
    if np.any(spread <= 0.0):
        raise ParameterDomainError(f"{name}: must be > 0")
    return x, mean, spread


def _out(value: np.ndarray) -> ArrayLike:
    return float(value) if np.ndim(value) == 0 else value


def gaussian_cdf(x: ArrayLike, mean: ArrayLike, variance: ArrayLike) -> ArrayLike:
    """Normal cumulative through the complementary error function."""
    x, mean, variance = _check(x, mean, variance, "gaussian variance")
    z = (x - mean) / np.sqrt(2.0 * variance)
    return _out(0.5 * special.erfc(-z))


def gaussian_pdf(x: ArrayLike, mean: ArrayLike, variance: ArrayLike) -> ArrayLike:
    x, mean, variance = _check(x, mean, variance, "gaussian variance")
    return _out(np.exp(-0.5 * (x - mean) ** 2 / variance) / np.sqrt(2.0 * math.pi * variance))


def laplace_cdf(x: ArrayLike, mean: ArrayLike, scale: ArrayLike) -> ArrayLike:
    """Laplace cumulative; both branches share exp(-|z|) so nothing overflows."""
    x, mean, scale = _check(x, mean, scale, "laplace scale")
    z = (x - mean) / scale
    half_tail = 0.5 * np.exp(-np.abs(z))
    return _out(np.where(z < 0.0, half_tail, 1.0 - half_tail))


def laplace_pdf(x: ArrayLike, mean: ArrayLike, scale: ArrayLike) -> ArrayLike:
    x, mean, scale = _check(x, mean, scale, "laplace scale")
    return _out(0.5 / scale * np.exp(-np.abs(x - mean) / scale))


def logistic_cdf(x: ArrayLike, mean: ArrayLike, scale: ArrayLike) -> ArrayLike:
    x, mean, scale = _check(x, mean, scale, "logistic scale")
    return _out(special.expit((x - mean) / scale))


def logistic_pdf(x: ArrayLike, mean: ArrayLike, scale: ArrayLike) -> ArrayLike:
    x, mean, scale = _check(x, mean, scale, "logistic scale")
    s = special.expit((x - mean) / scale)
    return _out(s * (1.0 - s) / scale)
