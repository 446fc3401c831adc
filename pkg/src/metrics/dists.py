"""
DISTS aggregation over externally extracted feature maps.

Per stage and channel the texture term compares spatial means and the
structure term compares spatial (co)variances; the score is one minus
their alpha/beta-weighted sum. Feature extraction itself happens
elsewhere and reaches this module through "DFTR" files:

    magic "DFTR" | version u16 | flags u16 (bit 0 = weights present) |
    stage count u16 | per stage C, H, W u32 | f32 maps, row-major |
    per stage alpha[C] f64 then beta[C] f64 (only with bit 0)
"""

import logging
import os
from dataclasses import dataclass
from typing import Any, Optional, Sequence, Tuple

import numpy as np

from utils.binary import ByteReader, pack, pack_array
from utils.errors import CorruptionError, InputError

logger = logging.getLogger(__name__)

MAGIC = b"DFTR"
VERSION = 1
FLAG_WEIGHTS = 0x0001
WEIGHT_TOLERANCE = 1e-9


def _frozen(array: Any, dtype=np.float64) -> np.ndarray:
    array = np.array(array, dtype=dtype)
    array.flags.writeable = False
    return array


@dataclass(frozen=True, eq=False)
class FeatureStack:
    """Feature maps of one image, one (channels, height, width) array per stage."""

    stages: Tuple[np.ndarray, ...]

    def __post_init__(self):
        stages = tuple(_frozen(stage) for stage in self.stages)
        for index, stage in enumerate(stages):
            if stage.ndim != 3 or 0 in stage.shape:
                raise InputError(f"stage {index}: expected non-empty (C, H, W) maps, got {stage.shape}")
            if not np.all(np.isfinite(stage)):
                raise InputError(f"stage {index}: non-finite feature values")
        object.__setattr__(self, 'stages', stages)

    @property
    def shapes(self) -> Tuple[Tuple[int, int, int], ...]:
        return tuple(tuple(int(s) for s in stage.shape) for stage in self.stages)


@dataclass(frozen=True, eq=False)
class DistsWeights:
    """Texture (alpha) and structure (beta) weights per stage and channel."""

    alpha: Tuple[np.ndarray, ...]
    beta: Tuple[np.ndarray, ...]

    def __post_init__(self):
        alpha = tuple(_frozen(a).reshape(-1) for a in self.alpha)
        beta = tuple(_frozen(b).reshape(-1) for b in self.beta)
        if len(alpha) != len(beta) or any(a.shape != b.shape for a, b in zip(alpha, beta)):
            raise InputError("alpha and beta must have one equally sized vector per stage")
        values = np.concatenate(alpha + beta) if alpha else np.zeros(0)
        if not np.all(np.isfinite(values)) or np.any(values < 0.0):
            raise InputError("DISTS weights must be finite and >= 0")
        if abs(values.sum() - 1.0) > WEIGHT_TOLERANCE:
            raise InputError(f"DISTS weights sum to {values.sum():.12g}, expected 1")
        object.__setattr__(self, 'alpha', alpha)
        object.__setattr__(self, 'beta', beta)

    @property
    def channels(self) -> Tuple[int, ...]:
        return tuple(a.shape[0] for a in self.alpha)


@dataclass(frozen=True)
class DistsSettings:
    c1: float = 1e-6
    c2: float = 1e-6

    @classmethod
    def from_config(cls, config: Any) -> 'DistsSettings':
        section = config.get('metrics.dists', {}) or {}
        return cls(c1=float(section.get('c1', cls.c1)), c2=float(section.get('c2', cls.c2)))


def uniform_dists_weights(shapes: Sequence[Tuple[int, int, int]]) -> DistsWeights:
    """Equal alpha and beta for every channel, summing to 1."""
    total = sum(shape[0] for shape in shapes)
    if total == 0:
        raise InputError("cannot build weights for an empty feature stack")
    share = 1.0 / (2 * total)
    vectors = tuple(np.full(shape[0], share) for shape in shapes)
    return DistsWeights(vectors, vectors)


def dists_score(fx: FeatureStack, fy: FeatureStack, weights: DistsWeights,
                settings: DistsSettings = DistsSettings()) -> float:
    """
    DISTS of two feature stacks.

    Args:
        fx: Features of the reference image
        fy: Features of the distorted image
        weights: Alpha/beta weights matching the stack channels
        settings: Stabilizing constants

    Returns:
        1 - sum(alpha * texture + beta * structure) clamped into [0, 1];
        0 for identical stacks
    """
    if fx.shapes != fy.shapes:
        raise InputError(f"feature stacks differ in shape: {fx.shapes} vs {fy.shapes}")
    if weights.channels != tuple(shape[0] for shape in fx.shapes):
        raise InputError(
            f"weights cover channels {weights.channels}, features have "
            f"{tuple(shape[0] for shape in fx.shapes)}"
        )

    similarity = 0.0
    for x, y, alpha, beta in zip(fx.stages, fy.stages, weights.alpha, weights.beta):
        x = x.reshape(x.shape[0], -1)
        y = y.reshape(y.shape[0], -1)
        mu_x, mu_y = x.mean(axis=1), y.mean(axis=1)
        dx, dy = x - mu_x[:, None], y - mu_y[:, None]
        var_x = np.mean(dx * dx, axis=1)
        var_y = np.mean(dy * dy, axis=1)
        cov = np.mean(dx * dy, axis=1)
        texture = (2.0 * mu_x * mu_y + settings.c1) / (mu_x ** 2 + mu_y ** 2 + settings.c1)
        structure = (2.0 * cov + settings.c2) / (var_x + var_y + settings.c2)
        similarity += float(alpha @ texture + beta @ structure)
    return float(np.clip(1.0 - similarity, 0.0, 1.0))


def serialize_features(stack: FeatureStack, weights: Optional[DistsWeights] = None) -> bytes:
    flags = FLAG_WEIGHTS if weights is not None else 0
    parts = [MAGIC, pack("HHH", VERSION, flags, len(stack.stages))]
    parts.extend(pack("III", *shape) for shape in stack.shapes)
    parts.extend(pack_array(stage, 'f4') for stage in stack.stages)
    if weights is not None:
        if weights.channels != tuple(shape[0] for shape in stack.shapes):
            raise InputError("weights do not match the feature stack channels")
        for alpha, beta in zip(weights.alpha, weights.beta):
            parts.append(pack_array(alpha, 'f8'))
            parts.append(pack_array(beta, 'f8'))
    return b"".join(parts)


def parse_features(data: bytes) -> Tuple[FeatureStack, Optional[DistsWeights]]:
    """Decode a "DFTR" file into its stack and optional weights."""
    reader = ByteReader(data, "feature file")
    reader.expect_magic(MAGIC)
    version, flags, count = reader.unpack("HHH")
    if version != VERSION:
        raise CorruptionError(f"feature file: unsupported version {version}")
    shapes = [reader.unpack("III") for _ in range(count)]
    stages = [reader.array('f4', c * h * w).reshape(c, h, w) for c, h, w in shapes]
    weights = None
    if flags & FLAG_WEIGHTS:
        alpha, beta = [], []
        for c, _, _ in shapes:
            alpha.append(reader.array('f8', c))
            beta.append(reader.array('f8', c))
        weights = DistsWeights(tuple(alpha), tuple(beta))
    reader.expect_end()
    return FeatureStack(tuple(stages)), weights


def save_features(path: str, stack: FeatureStack, weights: Optional[DistsWeights] = None) -> str:
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, 'wb') as f:
        f.write(serialize_features(stack, weights))
    return path


def load_features(path: str) -> Tuple[FeatureStack, Optional[DistsWeights]]:
    with open(path, 'rb') as f:
        return parse_features(f.read())
