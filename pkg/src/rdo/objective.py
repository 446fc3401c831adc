"""
Rate, bits per pixel and the rate-distortion cost.
"""

import math
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np

from coding.cdf_table import DEFAULT_PRECISION
from coding.latent import LatentTensor
from entropy.alphabet import PROBABILITY_FLOOR, DiscreteDistribution, SymbolAlphabet
from entropy.model import EntropyModel
from entropy.symbol_map import SymbolMap
from metrics.distortion import K_DI, K_MS
from utils.errors import ParameterDomainError

DEFAULT_LAMBDAS = (2.0, 1.0, 0.5)
DEFAULT_TIERS = {"low": 0.23, "mid": 0.33, "high": 0.48}


@dataclass(frozen=True)
class RdoConfig:
    """Settings of one rate-distortion evaluation."""

    lambdas: Tuple[float, ...] = DEFAULT_LAMBDAS
    k_ms: float = K_MS
    k_di: float = K_DI
    precision_bits: int = DEFAULT_PRECISION
    probability_floor: float = PROBABILITY_FLOOR
    downsampling_factor: int = 16
    hyper_downsampling: int = 4
    tiers: Dict[str, float] = field(default_factory=lambda: dict(DEFAULT_TIERS))

    def __post_init__(self):
        object.__setattr__(self, 'lambdas', tuple(float(v) for v in self.lambdas))
        if not self.lambdas:
            raise ParameterDomainError("at least one lambda is required")
        for value in self.lambdas:
            if not math.isfinite(value) or value <= 0.0:
                raise ParameterDomainError(f"lambda must be finite and > 0, got {value}")
        if self.k_ms < 0.0 or self.k_di < 0.0:
            raise ParameterDomainError(f"k_ms and k_di must be >= 0, got {self.k_ms}, {self.k_di}")

    @classmethod
    def from_config(cls, config: Any) -> 'RdoConfig':
        return cls(
            lambdas=tuple(config.get('rdo.lambdas', DEFAULT_LAMBDAS)),
            k_ms=float(config.get('rdo.k_ms', K_MS)),
            k_di=float(config.get('rdo.k_di', K_DI)),
            precision_bits=int(config.get('coding.precision_bits', DEFAULT_PRECISION)),
            probability_floor=float(config.get('entropy.probability_floor', PROBABILITY_FLOOR)),
            downsampling_factor=int(config.get('coding.downsampling_factor', 16)),
            hyper_downsampling=int(config.get('coding.hyper_downsampling', 4)),
            tiers=dict(config.get('rdo.tiers', DEFAULT_TIERS)),
        )


def symbol_bits(tensor: LatentTensor, distributions: SymbolMap[DiscreteDistribution]) -> np.ndarray:
    """-log2 P(symbol) of every entry, shaped like the tensor."""
    if distributions.shape != tensor.shape:
        raise ParameterDomainError(
            f"distributions cover shape {distributions.shape}, tensor has {tensor.shape}"
        )
    table = np.stack([dist.probabilities for dist in distributions.items])
    positions = tensor.flat() - tensor.alphabet.min_symbol
    probabilities = table[distributions.slot_indices(), positions]
    return -np.log2(probabilities).reshape(tensor.shape)


def rate_bits(tensor: LatentTensor, model: EntropyModel,
              floor: float = PROBABILITY_FLOOR) -> float:
    """
    Estimated rate of a main latent under the model's real-valued probabilities.

    Args:
        tensor: Main latent y_hat
        model: Entropy model providing one GLLMM set per channel or entry
        floor: Probability floor applied before rating

    Returns:
        Sum over entries of -log2 P(symbol), in bits
    """
    tensor = as_alphabet(tensor, model.y_alphabet)
    return float(symbol_bits(tensor, model.y_distributions(tensor.shape, floor)).sum())


def hyper_rate_bits(tensor: LatentTensor, model: EntropyModel,
                    floor: float = PROBABILITY_FLOOR) -> float:
    """Estimated rate of a hyper-latent under the factorized hyperprior."""
    tensor = as_alphabet(tensor, model.z_alphabet)
    return float(symbol_bits(tensor, model.z_distributions(tensor.shape, floor)).sum())


def as_alphabet(tensor: LatentTensor, alphabet: SymbolAlphabet) -> LatentTensor:
    """Re-express ``tensor`` over the model alphabet; raises if a symbol falls outside."""
    if tensor.alphabet == alphabet:
        return tensor
    return LatentTensor(tensor.values, alphabet)


def bpp(total_bits: float, width: int, height: int) -> float:
    """Bits per pixel."""
    if width < 1 or height < 1:
        raise ParameterDomainError(f"image size must be positive, got {width}x{height}")
    return total_bits / (width * height)


def rd_cost(distortion: float, rate: float, lam: float) -> float:
    """distortion + lambda * rate."""
    if not math.isfinite(lam) or lam <= 0.0:
        raise ParameterDomainError(f"lambda must be finite and > 0, got {lam}")
    if not (math.isfinite(distortion) and math.isfinite(rate)):
        raise ParameterDomainError(f"distortion and rate must be finite, got {distortion}, {rate}")
    return distortion + lam * rate


def bpp_tier(value: float, tiers: Optional[Dict[str, float]] = None) -> str:
    """Label of the tier whose nominal bpp is nearest to ``value``."""
    tiers = tiers or DEFAULT_TIERS
    return min(tiers, key=lambda name: (abs(tiers[name] - value), tiers[name]))


def lambda_list(text: str) -> Sequence[float]:
    """Parse a comma-separated lambda list such as "2,1,0.5"."""
    try:
        values = [float(part) for part in text.split(',') if part.strip()]
    except ValueError as e:
        raise ParameterDomainError(f"invalid lambda list {text!r}: {e}") from e
    if not values:
        raise ParameterDomainError("empty lambda list")
    return values
