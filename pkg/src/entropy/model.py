"""
Entropy model bundle: GLLMM parameters for the main latent plus the
factorized hyperprior for the hyper-latent.
"""

import hashlib
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Tuple

from utils.errors import CodingError, ParameterDomainError
from .alphabet import PROBABILITY_FLOOR, DiscreteDistribution, SymbolAlphabet
from .factorized import FactorizedDensityParams, discretize_channel
from .gllmm import GllmmParams, discretize
from .symbol_map import PER_CHANNEL, PER_ENTRY, Shape, SymbolMap
from .validation import MIN_SCALE, ValidationReport, validate_params

MODEL_ID_BYTES = 8


@dataclass(frozen=True, eq=False)
class EntropyModel:
    """
    Parameters needed to rate and code a (y_hat, z_hat) pair.

    ``gllmm_sets`` holds one set per channel (``per_channel`` layout) or one
    per latent entry (``per_entry`` layout, raster order over ``entry_shape``).
    """

    gllmm_sets: Tuple[GllmmParams, ...]
    layout: str
    channels: int
    y_alphabet: SymbolAlphabet
    z_alphabet: SymbolAlphabet
    hyperprior: FactorizedDensityParams
    entry_shape: Optional[Shape] = None

    def __post_init__(self):
        object.__setattr__(self, 'gllmm_sets', tuple(self.gllmm_sets))
        if self.layout == PER_CHANNEL:
            expected = self.channels
        elif self.layout == PER_ENTRY:
            if self.entry_shape is None or self.entry_shape[0] != self.channels:
                raise ParameterDomainError("per-entry models need an entry shape matching channels")
            object.__setattr__(self, 'entry_shape', tuple(int(s) for s in self.entry_shape))
            expected = self.channels * self.entry_shape[1] * self.entry_shape[2]
        else:
            raise ParameterDomainError(f"unknown parameter layout {self.layout!r}")
        if len(self.gllmm_sets) != expected:
            raise ParameterDomainError(
                f"{self.layout} model needs {expected} parameter sets, got {len(self.gllmm_sets)}"
            )

    @property
    def z_channels(self) -> int:
        return self.hyperprior.channels

    @cached_property
    def model_id(self) -> bytes:
        """First bytes of the SHA-256 of the serialized model."""
        from .model_file import serialize_model
        return hashlib.sha256(serialize_model(self)).digest()[:MODEL_ID_BYTES]

    def validate(self, min_scale: float = MIN_SCALE) -> ValidationReport:
        """Validate every parameter set and the hyperprior."""
        report = ValidationReport()
        for index, params in enumerate(self.gllmm_sets):
            report.extend(validate_params(params, min_scale), prefix=f"set[{index}].")
        report.extend(validate_params(self.hyperprior), prefix="hyperprior.")
        return report

    def z_shape(self, y_shape: Shape, hyper_downsampling: int = 4) -> Shape:
        """Hyper-latent shape derived from the main latent shape."""
        _, height, width = y_shape
        return (self.z_channels,
                math.ceil(height / hyper_downsampling),
                math.ceil(width / hyper_downsampling))

    def gllmm_map(self, shape: Shape) -> SymbolMap[GllmmParams]:
        shape = tuple(int(s) for s in shape)
        if shape[0] != self.channels:
            raise CodingError(f"latent has {shape[0]} channels, model has {self.channels}")
        if self.layout == PER_ENTRY:
            if shape != self.entry_shape:
                raise CodingError(f"latent shape {shape} differs from model entry shape {self.entry_shape}")
            return SymbolMap.per_entry(self.gllmm_sets, shape)
        return SymbolMap.per_channel(self.gllmm_sets, shape)

    def y_distributions(self, shape: Shape,
                        floor: float = PROBABILITY_FLOOR) -> SymbolMap[DiscreteDistribution]:
        return self.gllmm_map(shape).map(lambda params: discretize(params, self.y_alphabet, floor))

    def z_distributions(self, shape: Shape,
                        floor: float = PROBABILITY_FLOOR) -> SymbolMap[DiscreteDistribution]:
        shape = tuple(int(s) for s in shape)
        if shape[0] != self.z_channels:
            raise CodingError(f"hyper-latent has {shape[0]} channels, hyperprior has {self.z_channels}")
        distributions = [discretize_channel(self.hyperprior, channel, self.z_alphabet, floor)
                         for channel in range(self.z_channels)]
        return SymbolMap.per_channel(distributions, shape)
