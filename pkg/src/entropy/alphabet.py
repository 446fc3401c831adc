"""
Symbol alphabets and floored discrete distributions.
"""

from dataclasses import dataclass
from typing import Any

import numpy as np

from utils.errors import InputError, OutOfAlphabetError, ParameterDomainError

# Smallest probability any codable symbol may carry.
PROBABILITY_FLOOR = 2.0 ** -16

# Alphabet bounds are stored as signed 16-bit integers in every file format.
MIN_SYMBOL = -(1 << 15)
MAX_SYMBOL = (1 << 15) - 1


@dataclass(frozen=True)
class SymbolAlphabet:
    """Contiguous integer support [min_symbol, max_symbol] of a latent tensor."""

    min_symbol: int
    max_symbol: int

    def __post_init__(self):
        if self.min_symbol >= self.max_symbol:
            raise ParameterDomainError(
                f"alphabet min_symbol {self.min_symbol} must be below max_symbol {self.max_symbol}"
            )
        if self.min_symbol < MIN_SYMBOL or self.max_symbol > MAX_SYMBOL:
            raise ParameterDomainError(
                f"alphabet [{self.min_symbol}, {self.max_symbol}] must lie within "
                f"[{MIN_SYMBOL}, {MAX_SYMBOL}]"
            )

    @property
    def span(self) -> int:
        """Number of symbols in the alphabet."""
        return self.max_symbol - self.min_symbol + 1

    def symbols(self) -> np.ndarray:
        return np.arange(self.min_symbol, self.max_symbol + 1, dtype=np.int64)

    def contains(self, symbol: int) -> bool:
        return self.min_symbol <= symbol <= self.max_symbol

    def index_of(self, symbol: int) -> int:
        """Position of ``symbol`` inside the alphabet."""
        if not self.contains(symbol):
            raise OutOfAlphabetError(
                f"symbol {symbol} outside alphabet [{self.min_symbol}, {self.max_symbol}]"
            )
        return int(symbol) - self.min_symbol

    def check_values(self, values: np.ndarray):
        """Raise if any value falls outside the alphabet."""
        if values.size == 0:
            return
        low, high = int(values.min()), int(values.max())
        if low < self.min_symbol or high > self.max_symbol:
            bad = low if low < self.min_symbol else high
            raise OutOfAlphabetError(
                f"symbol {bad} outside alphabet [{self.min_symbol}, {self.max_symbol}]"
            )

    def to_list(self):
        return [self.min_symbol, self.max_symbol]


@dataclass(frozen=True, eq=False)
class DiscreteDistribution:
    """
    Probabilities over every symbol of an alphabet.

    Build instances with ``from_masses`` so the probability floor and
    normalization hold.
    """

    alphabet: SymbolAlphabet
    probabilities: np.ndarray

    def __post_init__(self):
        probs = np.asarray(self.probabilities, dtype=np.float64)
        if probs.shape != (self.alphabet.span,):
            raise InputError(
                f"expected {self.alphabet.span} probabilities, got shape {probs.shape}"
            )
        if not np.all(np.isfinite(probs)) or abs(probs.sum() - 1.0) > 1e-6:
            raise ParameterDomainError("probabilities must be finite and sum to 1")
        probs = probs.copy()
        probs.flags.writeable = False
        object.__setattr__(self, 'probabilities', probs)

    @classmethod
    def from_masses(cls, alphabet: SymbolAlphabet, masses: Any,
                    floor: float = PROBABILITY_FLOOR) -> 'DiscreteDistribution':
        """
        Floor and renormalize raw bin masses.

        Bins below the floor are pinned to it and the remaining mass is
        shared proportionally among the others, repeating until no bin
        falls under the floor.

        Args:
            alphabet: Alphabet the masses are indexed by
            masses: Non-negative bin masses, one per symbol
            floor: Minimum probability of any bin

        Returns:
            Distribution with every probability >= floor
        """
        masses = np.clip(np.asarray(masses, dtype=np.float64), 0.0, None)
        span = alphabet.span
        if masses.shape != (span,):
            raise InputError(f"expected {span} masses, got shape {masses.shape}")
        if span * floor > 1.0 + 1e-12:
            raise ParameterDomainError(f"floor {floor} too large for {span} symbols")
        if not np.all(np.isfinite(masses)) or masses.sum() <= 0.0:
            raise ParameterDomainError("bin masses must be finite with positive total")

        pinned = np.zeros(span, dtype=bool)
        probs = masses / masses.sum()
        while True:
            below = (probs < floor) & ~pinned
            if not below.any():
                break
            pinned |= below
            free_mass = 1.0 - floor * pinned.sum()
            free = masses[~pinned]
            probs = np.full(span, floor)
            if free.size:
                total = free.sum()
                if total > 0.0:
                    probs[~pinned] = free / total * free_mass
                else:
                    probs[~pinned] = free_mass / free.size
        return cls(alphabet, probs)

    @classmethod
    def uniform(cls, alphabet: SymbolAlphabet) -> 'DiscreteDistribution':
        return cls(alphabet, np.full(alphabet.span, 1.0 / alphabet.span))

    def probability(self, symbol: int) -> float:
        return float(self.probabilities[self.alphabet.index_of(symbol)])

    def entropy_bits(self) -> float:
        """Shannon entropy in bits."""
        p = self.probabilities
        return float(-np.sum(p * np.log2(p)))
