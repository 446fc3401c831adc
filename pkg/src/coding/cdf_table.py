"""
Fixed-point cumulative frequency tables.
"""

import bisect
import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from entropy.alphabet import DiscreteDistribution, SymbolAlphabet
from entropy.symbol_map import SymbolMap
from utils.errors import CapacityError, CorruptionError, ParameterDomainError

logger = logging.getLogger(__name__)

MIN_PRECISION = 8
MAX_PRECISION = 16
DEFAULT_PRECISION = 16


@dataclass(frozen=True)
class CdfTable:
    """
    Cumulative frequencies of an alphabet; symbol i owns
    [cumulative[i], cumulative[i + 1]).
    """

    alphabet: SymbolAlphabet
    cumulative: Tuple[int, ...]
    precision_bits: int

    def __post_init__(self):
        cumulative = tuple(int(c) for c in self.cumulative)
        object.__setattr__(self, 'cumulative', cumulative)
        if len(cumulative) != self.alphabet.span + 1:
            raise ParameterDomainError(
                f"table needs {self.alphabet.span + 1} cumulative entries, got {len(cumulative)}"
            )
        if cumulative[0] != 0 or cumulative[-1] != self.total:
            raise ParameterDomainError(f"table must run from 0 to {self.total}")
        if any(b <= a for a, b in zip(cumulative, cumulative[1:])):
            raise ParameterDomainError("every symbol needs a frequency of at least 1")

    @property
    def total(self) -> int:
        return 1 << self.precision_bits

    @property
    def frequencies(self) -> np.ndarray:
        return np.diff(np.asarray(self.cumulative, dtype=np.int64))

    def interval(self, symbol: int) -> Tuple[int, int]:
        """(cumulative start, frequency) of ``symbol``."""
        index = self.alphabet.index_of(symbol)
        start = self.cumulative[index]
        return start, self.cumulative[index + 1] - start

    def lookup(self, target: int) -> int:
        """Alphabet position whose interval contains ``target``."""
        if not 0 <= target < self.total:
            raise CorruptionError(f"decoder target {target} outside [0, {self.total})")
        return bisect.bisect_right(self.cumulative, target) - 1

    def bits(self, symbol: int) -> float:
        """Fixed-point code length of ``symbol`` in bits."""
        _, frequency = self.interval(symbol)
        return self.precision_bits - float(np.log2(frequency))


def build_cdf_table(dist: DiscreteDistribution, precision_bits: int = DEFAULT_PRECISION) -> CdfTable:
    """
    Apportion 2**precision_bits frequency units over the alphabet.

    Every symbol first receives one unit; the rest is split by largest
    remainder, ties going to the lower symbol.

    Args:
        dist: Distribution to quantize
        precision_bits: Frequency precision, 8..16

    Returns:
        Table whose frequencies sum exactly to 2**precision_bits
    """
    if not MIN_PRECISION <= precision_bits <= MAX_PRECISION:
        raise ParameterDomainError(
            f"precision {precision_bits} outside [{MIN_PRECISION}, {MAX_PRECISION}]"
        )
    span = dist.alphabet.span
    total = 1 << precision_bits
    if span >= total:
        raise CapacityError(f"alphabet span {span} does not fit {precision_bits}-bit frequencies")

    spare = total - span
    quotas = dist.probabilities * spare
    base = np.floor(quotas).astype(np.int64)
    remainders = quotas - base
    leftover = spare - int(base.sum())
    # primary key: larger remainder first; secondary: lower index
    order = np.lexsort((np.arange(span), -remainders))
    frequencies = base + 1
    while leftover > 0:
        take = order[:min(leftover, span)]
        frequencies[take] += 1
        leftover -= len(take)

    cumulative = np.concatenate(([0], np.cumsum(frequencies)))
    return CdfTable(dist.alphabet, tuple(cumulative.tolist()), precision_bits)


def build_tables(distributions: SymbolMap[DiscreteDistribution],
                 precision_bits: int = DEFAULT_PRECISION) -> SymbolMap[CdfTable]:
    """One table per distinct distribution, addressed like the distributions."""
    tables = distributions.map(lambda dist: build_cdf_table(dist, precision_bits))
    logger.debug("built %d %s tables at %d bits", len(tables.items), tables.layout, precision_bits)
    return tables
