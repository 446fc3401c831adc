"""
Multi-scale structural similarity (MS-SSIM) on RGB rasters.

Each color plane is scored separately and the three scores are averaged.
Per scale the planes are filtered with a separable Gaussian window
('valid' borders), then halved by 2x2 mean pooling; contrast-structure
terms enter at every scale but the last, which uses the full SSIM.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, List, Optional, Tuple

import numpy as np
from scipy import signal

from utils.errors import InputError, ParameterDomainError
from .images import ImageRaster

logger = logging.getLogger(__name__)

DEFAULT_WEIGHTS = (0.0448, 0.2856, 0.3001, 0.2363, 0.1333)


@dataclass(frozen=True)
class MsSsimSettings:
    """Window, stabilizer and scale settings of the metric."""

    scales: int = 5
    weights: Tuple[float, ...] = DEFAULT_WEIGHTS
    window_size: int = 11
    sigma: float = 1.5
    k1: float = 0.01
    k2: float = 0.03
    dynamic_range: float = 255.0
    allow_scale_reduction: bool = False

    def __post_init__(self):
        object.__setattr__(self, 'weights', tuple(float(w) for w in self.weights))
        if self.scales < 1 or len(self.weights) != self.scales:
            raise ParameterDomainError(
                f"{self.scales} scales need as many weights, got {len(self.weights)}"
            )
        if self.window_size < 1 or self.window_size % 2 == 0:
            raise ParameterDomainError(f"window size must be odd, got {self.window_size}")

    @property
    def c1(self) -> float:
        return (self.k1 * self.dynamic_range) ** 2

    @property
    def c2(self) -> float:
        return (self.k2 * self.dynamic_range) ** 2

    def min_side(self, scales: Optional[int] = None) -> int:
        """Smallest image side that still fits the window at the coarsest scale."""
        return self.window_size * 2 ** ((scales or self.scales) - 1)

    @classmethod
    def from_config(cls, config: Any) -> 'MsSsimSettings':
        section = config.get('metrics.ms_ssim', {}) or {}
        defaults = cls()
        return cls(
            scales=int(section.get('scales', defaults.scales)),
            weights=tuple(section.get('weights', defaults.weights)),
            window_size=int(section.get('window_size', defaults.window_size)),
            sigma=float(section.get('sigma', defaults.sigma)),
            k1=float(section.get('k1', defaults.k1)),
            k2=float(section.get('k2', defaults.k2)),
            dynamic_range=float(section.get('dynamic_range', defaults.dynamic_range)),
            allow_scale_reduction=bool(section.get('allow_scale_reduction',
                                                   defaults.allow_scale_reduction)),
        )


@dataclass
class SsimComponents:
    """Mean SSIM and mean contrast-structure value at every scale."""

    ssim: List[float] = field(default_factory=list)
    contrast_structure: List[float] = field(default_factory=list)


def gaussian_window(size: int, sigma: float) -> np.ndarray:
    """Normalized 1-D Gaussian taps."""
    coords = np.arange(size, dtype=np.float64) - size // 2
    taps = np.exp(-(coords ** 2) / (2.0 * sigma ** 2))
    return taps / taps.sum()


def _filter(plane: np.ndarray, taps: np.ndarray) -> np.ndarray:
    rows = signal.convolve2d(plane, taps[None, :], mode='valid')
    return signal.convolve2d(rows, taps[:, None], mode='valid')


def _downsample(plane: np.ndarray) -> np.ndarray:
    height, width = plane.shape
    plane = plane[:height - height % 2, :width - width % 2]
    return 0.25 * (plane[0::2, 0::2] + plane[1::2, 0::2] + plane[0::2, 1::2] + plane[1::2, 1::2])


def _scale_terms(x: np.ndarray, y: np.ndarray, taps: np.ndarray,
                 c1: float, c2: float) -> Tuple[float, float]:
    mu_x = _filter(x, taps)
    mu_y = _filter(y, taps)
    mu_xx, mu_yy, mu_xy = mu_x * mu_x, mu_y * mu_y, mu_x * mu_y
    var_x = _filter(x * x, taps) - mu_xx
    var_y = _filter(y * y, taps) - mu_yy
    cov = _filter(x * y, taps) - mu_xy

    cs_map = (2.0 * cov + c2) / (var_x + var_y + c2)
    luminance = (2.0 * mu_xy + c1) / (mu_xx + mu_yy + c1)
    return float(np.mean(luminance * cs_map)), float(np.mean(cs_map))


def ssim_components(x: np.ndarray, y: np.ndarray,
                    settings: MsSsimSettings = MsSsimSettings(),
                    scales: Optional[int] = None) -> SsimComponents:
    """
    Per-scale statistics of one pair of grey planes.

    Args:
        x: Reference plane, float
        y: Distorted plane of the same shape
        settings: Metric settings
        scales: Scale count, defaults to ``settings.scales``

    Returns:
        Mean SSIM and contrast-structure values, finest scale first
    """
    scales = scales or settings.scales
    taps = gaussian_window(settings.window_size, settings.sigma)
    components = SsimComponents()
    for scale in range(scales):
        ssim, cs = _scale_terms(x, y, taps, settings.c1, settings.c2)
        components.ssim.append(ssim)
        components.contrast_structure.append(cs)
        if scale < scales - 1:
            x, y = _downsample(x), _downsample(y)
    return components


def _active_scales(x: ImageRaster, y: ImageRaster, settings: MsSsimSettings) -> Tuple[int, np.ndarray]:
    if x.shape != y.shape:
        raise InputError(f"image sizes differ: {x.width}x{x.height} vs {y.width}x{y.height}")
    side = min(x.shape)
    weights = np.asarray(settings.weights)
    if side >= settings.min_side():
        return settings.scales, weights
    if not settings.allow_scale_reduction or side < settings.window_size:
        raise InputError(
            f"image side {side} below the {settings.min_side()} pixels {settings.scales}-scale "
            "MS-SSIM needs"
        )
    scales = settings.scales
    while side < settings.min_side(scales):
        scales -= 1
    logger.warning("reducing MS-SSIM from %d to %d scales for %dx%d images",
                   settings.scales, scales, x.width, x.height)
    weights = weights[:scales]
    return scales, weights / weights.sum()


def ms_ssim(x: ImageRaster, y: ImageRaster, settings: MsSsimSettings = MsSsimSettings()) -> float:
    """
    MS-SSIM of two equally sized RGB images, in [0, 1].

    Raises:
        InputError: Size mismatch or images too small for the scale count
    """
    scales, weights = _active_scales(x, y, settings)
    scores = []
    for channel in range(3):
        components = ssim_components(x.channel(channel), y.channel(channel), settings, scales)
        cs = np.maximum(np.asarray(components.contrast_structure[:-1]), 0.0)
        last = max(components.ssim[-1], 0.0)
        scores.append(float(np.prod(cs ** weights[:-1]) * last ** weights[-1]))
    return float(np.mean(scores))


def ms_ssim_loss(x: ImageRaster, y: ImageRaster, settings: MsSsimSettings = MsSsimSettings()) -> float:
    """1 - MS-SSIM."""
    return 1.0 - ms_ssim(x, y, settings)
