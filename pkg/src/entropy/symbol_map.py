"""
Mapping from raster positions of a (channels, height, width) tensor to
per-symbol items: parameter sets, distributions or CDF tables.
"""

from dataclasses import dataclass
from typing import Callable, Generic, Sequence, Tuple, TypeVar

import numpy as np

from utils.errors import CodingError

T = TypeVar('T')
U = TypeVar('U')

SHARED = "shared"
PER_CHANNEL = "per_channel"
PER_ENTRY = "per_entry"
LAYOUTS = (SHARED, PER_CHANNEL, PER_ENTRY)

Shape = Tuple[int, int, int]


@dataclass(frozen=True)
class SymbolMap(Generic[T]):
    """
    Items addressed by raster index (channel-major).

    ``shared`` holds one item, ``per_channel`` one per channel and
    ``per_entry`` one per symbol.
    """

    items: Tuple[T, ...]
    layout: str
    shape: Shape

    def __post_init__(self):
        if self.layout not in LAYOUTS:
            raise CodingError(f"unknown layout {self.layout!r}")
        object.__setattr__(self, 'items', tuple(self.items))
        object.__setattr__(self, 'shape', tuple(int(s) for s in self.shape))
        expected = {SHARED: 1, PER_CHANNEL: self.shape[0], PER_ENTRY: self.size}[self.layout]
        if len(self.items) != expected:
            raise CodingError(
                f"{self.layout} map over shape {self.shape} needs {expected} items, "
                f"got {len(self.items)}"
            )

    @property
    def size(self) -> int:
        channels, height, width = self.shape
        return channels * height * width

    @classmethod
    def shared(cls, item: T, shape: Shape) -> 'SymbolMap[T]':
        return cls((item,), SHARED, shape)

    @classmethod
    def per_channel(cls, items: Sequence[T], shape: Shape) -> 'SymbolMap[T]':
        return cls(tuple(items), PER_CHANNEL, shape)

    @classmethod
    def per_entry(cls, items: Sequence[T], shape: Shape) -> 'SymbolMap[T]':
        return cls(tuple(items), PER_ENTRY, shape)

    def slot(self, index: int) -> int:
        """Position in ``items`` used by raster index ``index``."""
        if self.layout == SHARED:
            return 0
        if self.layout == PER_CHANNEL:
            return index // (self.shape[1] * self.shape[2])
        return index

    def slot_indices(self) -> np.ndarray:
        """``slot`` of every raster index at once."""
        indices = np.arange(self.size, dtype=np.int64)
        if self.layout == SHARED:
            return np.zeros(self.size, dtype=np.int64)
        if self.layout == PER_CHANNEL:
            return indices // max(self.shape[1] * self.shape[2], 1)
        return indices

    def item_for(self, index: int) -> T:
        return self.items[self.slot(index)]

    def map(self, function: Callable[[T], U]) -> 'SymbolMap[U]':
        """Apply ``function`` once per distinct item."""
        return SymbolMap(tuple(function(item) for item in self.items), self.layout, self.shape)
