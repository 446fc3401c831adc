"""
Fully factorized density for the hyper-latent.

Each channel owns one univariate cumulative c_psi built from L elementwise
layers over W lanes. The scalar input is copied to every lane; layer k
applies

    u <- softplus(H_k) * u + b_k
    u <- u + tanh(a_k) * tanh(u)

and the lanes are averaged and squashed by the logistic function. Both
steps are strictly increasing, so c_psi is a valid cumulative.
"""

from dataclasses import dataclass

import numpy as np
from scipy import special

from utils.errors import InputError, ParameterDomainError
from .alphabet import PROBABILITY_FLOOR, DiscreteDistribution, SymbolAlphabet
from .distributions import ArrayLike

DEFAULT_LAYERS = 4
DEFAULT_WIDTH = 3

# softplus(_UNIT_WEIGHT) == 1
_UNIT_WEIGHT = float(np.log(np.expm1(1.0)))


def softplus(x: ArrayLike) -> ArrayLike:
    return np.logaddexp(0.0, x)


@dataclass(frozen=True, eq=False)
class FactorizedDensityParams:
    """
    Raw layer parameters, each array shaped (channels, layers, width).

    ``weights`` and ``gates`` are stored before reparameterization through
    softplus and tanh respectively.
    """

    weights: np.ndarray
    biases: np.ndarray
    gates: np.ndarray

    def __post_init__(self):
        shapes = set()
        for name in ("weights", "biases", "gates"):
            array = np.array(getattr(self, name), dtype=np.float64)
            if array.ndim != 3:
                raise ParameterDomainError(f"{name} must be shaped (channels, layers, width)")
            array.flags.writeable = False
            object.__setattr__(self, name, array)
            shapes.add(array.shape)
        if len(shapes) != 1:
            raise ParameterDomainError(f"layer arrays disagree in shape: {sorted(shapes)}")

    @property
    def channels(self) -> int:
        return self.weights.shape[0]

    @property
    def layers(self) -> int:
        return self.weights.shape[1]

    @property
    def width(self) -> int:
        return self.weights.shape[2]

    @classmethod
    def identity(cls, channels: int, layers: int = DEFAULT_LAYERS,
                 width: int = DEFAULT_WIDTH) -> 'FactorizedDensityParams':
        """Unit weights, zero biases and gates: c_psi is the standard logistic."""
        shape = (channels, layers, width)
        return cls(np.full(shape, _UNIT_WEIGHT), np.zeros(shape), np.zeros(shape))

    @classmethod
    def random(cls, channels: int, rng: np.random.Generator, layers: int = DEFAULT_LAYERS,
               width: int = DEFAULT_WIDTH) -> 'FactorizedDensityParams':
        shape = (channels, layers, width)
        return cls(
            rng.normal(_UNIT_WEIGHT + 0.3, 0.3, size=shape),
            rng.normal(0.0, 0.5, size=shape),
            rng.normal(0.0, 0.5, size=shape),
        )

    def to_dict(self) -> dict:
        return {
            "weights": self.weights.tolist(),
            "biases": self.biases.tolist(),
            "gates": self.gates.tolist(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'FactorizedDensityParams':
        return cls(data["weights"], data["biases"], data["gates"])


def _check_channel(params: FactorizedDensityParams, channel: int):
    if not 0 <= channel < params.channels:
        raise InputError(f"channel {channel} not in hyperprior with {params.channels} channels")


def factorized_logits(params: FactorizedDensityParams, channel: int, x: ArrayLike) -> np.ndarray:
    """Pre-squash value of the channel cumulative."""
    _check_channel(params, channel)
    u = np.repeat(np.asarray(x, dtype=np.float64)[..., None], params.width, axis=-1)
    for layer in range(params.layers):
        u = softplus(params.weights[channel, layer]) * u + params.biases[channel, layer]
        u = u + np.tanh(params.gates[channel, layer]) * np.tanh(u)
    return u.mean(axis=-1)


def factorized_cdf(params: FactorizedDensityParams, channel: int, x: ArrayLike) -> ArrayLike:
    value = special.expit(factorized_logits(params, channel, x))
    return float(value) if np.ndim(value) == 0 else value


def factorized_masses(params: FactorizedDensityParams, channel: int,
                      alphabet: SymbolAlphabet) -> np.ndarray:
    """Raw bin masses of one channel, tails absorbed by the boundary bins."""
    edges = alphabet.symbols()[:-1] + 0.5
    cumulative = np.concatenate(
        ([0.0], np.atleast_1d(factorized_cdf(params, channel, edges)), [1.0])
    )
    return np.clip(np.diff(cumulative), 0.0, None)


def factorized_prob(params: FactorizedDensityParams, channel: int, k: int,
                    alphabet: SymbolAlphabet) -> float:
    """
    Probability mass of symbol ``k`` under channel ``channel``.

    Args:
        params: Hyperprior parameters
        channel: Channel whose density is used
        k: Symbol to evaluate
        alphabet: Alphabet whose boundary bins absorb the tails

    Returns:
        c_psi(k + 1/2) - c_psi(k - 1/2) with boundary tail absorption
    """
    _check_channel(params, channel)
    alphabet.index_of(k)
    low = 0.0 if k == alphabet.min_symbol else factorized_cdf(params, channel, k - 0.5)
    high = 1.0 if k == alphabet.max_symbol else factorized_cdf(params, channel, k + 0.5)
    return max(high - low, 0.0)


def discretize_channel(params: FactorizedDensityParams, channel: int, alphabet: SymbolAlphabet,
                       floor: float = PROBABILITY_FLOOR) -> DiscreteDistribution:
    return DiscreteDistribution.from_masses(
        alphabet, factorized_masses(params, channel, alphabet), floor
    )
