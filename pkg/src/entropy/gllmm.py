"""
Gaussian-Laplacian-Logistic mixture model (GLLMM) for the main latent.

The mixture cumulative is

    c(x) = p0 * sum_k w_k G(x; mu_k, var_k)
         + p1 * sum_m w_m L(x; mu_m, b_m)
         + p2 * sum_n w_n S(x; mu_n, s_n)

and an integer symbol k carries c(k + 1/2) - c(k - 1/2). The first and
last symbols of the alphabet absorb the tail mass on their side.
"""

from dataclasses import dataclass
from typing import Callable, Iterator, Tuple

import numpy as np

from utils.errors import ParameterDomainError
from .alphabet import PROBABILITY_FLOOR, DiscreteDistribution, SymbolAlphabet
from .distributions import (
    ArrayLike,
    gaussian_cdf,
    gaussian_pdf,
    laplace_cdf,
    laplace_pdf,
    logistic_cdf,
    logistic_pdf,
)

FAMILY_NAMES = ("gaussian", "laplace", "logistic")

_FAMILY_FUNCTIONS = {
    "gaussian": (gaussian_cdf, gaussian_pdf),
    "laplace": (laplace_cdf, laplace_pdf),
    "logistic": (logistic_cdf, logistic_pdf),
}


def _frozen(values, columns: int = None) -> np.ndarray:
    array = np.array(values, dtype=np.float64)
    if columns is not None:
        array = array.reshape(-1, columns)
    array.flags.writeable = False
    return array


@dataclass(frozen=True, eq=False)
class GllmmParams:
    """
    Mixture parameters of one latent symbol (or of one channel when shared).

    Component arrays hold one row per component: (weight, mean, spread),
    where spread is the variance for Gaussian components and the natural
    scale for Laplace and Logistic components.
    """

    family_weights: np.ndarray
    gaussian: np.ndarray
    laplace: np.ndarray
    logistic: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, 'family_weights', _frozen(self.family_weights))
        for name in FAMILY_NAMES:
            object.__setattr__(self, name, _frozen(getattr(self, name), columns=3))
        if self.family_weights.shape != (3,):
            raise ParameterDomainError(
                f"family weights need 3 entries, got {self.family_weights.shape[0]}"
            )

    @property
    def K(self) -> int:
        return self.gaussian.shape[0]

    @property
    def M(self) -> int:
        return self.laplace.shape[0]

    @property
    def N(self) -> int:
        return self.logistic.shape[0]

    @property
    def counts(self) -> Tuple[int, int, int]:
        return self.K, self.M, self.N

    @classmethod
    def standard(cls, k: int = 3, m: int = 3, n: int = 3) -> 'GllmmParams':
        """Equal weights, zero means and unit spreads in every family."""
        def block(count):
            return [[1.0 / count, 0.0, 1.0] for _ in range(count)]
        return cls([1.0 / 3.0] * 3, block(k), block(m), block(n))

    @classmethod
    def single(cls, family: str, mean: float = 0.0, spread: float = 1.0) -> 'GllmmParams':
        """One effective component of one family; every other weight is zero."""
        weights = [1.0 if name == family else 0.0 for name in FAMILY_NAMES]
        blocks = {}
        for name in FAMILY_NAMES:
            blocks[name] = [[1.0, mean, spread]] if name == family else [[1.0, 0.0, 1.0]]
        return cls(weights, blocks["gaussian"], blocks["laplace"], blocks["logistic"])

    def families(self) -> Iterator[Tuple[str, float, np.ndarray]]:
        """Yield (family name, family weight, component rows)."""
        for index, name in enumerate(FAMILY_NAMES):
            yield name, float(self.family_weights[index]), getattr(self, name)

    def to_dict(self) -> dict:
        return {
            "family_weights": self.family_weights.tolist(),
            "gaussian": self.gaussian.tolist(),
            "laplace": self.laplace.tolist(),
            "logistic": self.logistic.tolist(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'GllmmParams':
        return cls(data["family_weights"], data["gaussian"], data["laplace"], data["logistic"])


def _mixture(params: GllmmParams, x: ArrayLike, which: int) -> ArrayLike:
    x = np.asarray(x, dtype=np.float64)
    total = np.zeros(x.shape, dtype=np.float64)
    for name, family_weight, components in params.families():
        if family_weight == 0.0:
            continue
        function: Callable = _FAMILY_FUNCTIONS[name][which]
        values = function(x[..., None], components[:, 1], components[:, 2])
        total = total + family_weight * (np.asarray(values) @ components[:, 0])
    return float(total) if total.ndim == 0 else total


def gllmm_cdf(params: GllmmParams, x: ArrayLike) -> ArrayLike:
    """Mixture cumulative c(x)."""
    return _mixture(params, x, 0)


def gllmm_pdf(params: GllmmParams, x: ArrayLike) -> ArrayLike:
    """Mixture density, the derivative of ``gllmm_cdf``."""
    return _mixture(params, x, 1)


def discretized_masses(params: GllmmParams, alphabet: SymbolAlphabet) -> np.ndarray:
    """
    Raw bin masses for every symbol, tails absorbed by the boundary bins.

    Differences are taken as c(hi) - c(lo) directly; cancellation in the far
    tails stays below the probability floor applied by ``discretize``.
    """
    edges = alphabet.symbols()[:-1] + 0.5
    cumulative = np.concatenate(([0.0], np.atleast_1d(gllmm_cdf(params, edges)), [1.0]))
    return np.clip(np.diff(cumulative), 0.0, None)


def discretized_prob(params: GllmmParams, k: int, alphabet: SymbolAlphabet) -> float:
    """
    Probability mass of integer symbol ``k``.

    Args:
        params: Mixture parameters
        k: Symbol to evaluate
        alphabet: Alphabet whose boundary bins absorb the tails

    Returns:
        c(k + 1/2) - c(k - 1/2), with tail absorption at the boundaries
    """
    alphabet.index_of(k)
    low = 0.0 if k == alphabet.min_symbol else gllmm_cdf(params, k - 0.5)
    high = 1.0 if k == alphabet.max_symbol else gllmm_cdf(params, k + 0.5)
    return max(high - low, 0.0)


def discretize(params: GllmmParams, alphabet: SymbolAlphabet,
               floor: float = PROBABILITY_FLOOR) -> DiscreteDistribution:
    """Floored, normalized distribution of one parameter set."""
    return DiscreteDistribution.from_masses(alphabet, discretized_masses(params, alphabet), floor)


def mixture_entropy_bits(params: GllmmParams, alphabet: SymbolAlphabet,
                         floor: float = PROBABILITY_FLOOR) -> float:
    return discretize(params, alphabet, floor).entropy_bits()


