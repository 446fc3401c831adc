"""
Integer latent tensors, quantization and the "GLTN" latent file.

GLTN layout, little-endian: magic "GLTN" | version u16 | channels u16 |
height u32 | width u32 | alphabet min/max i16 i16 | i16 symbols in raster
order (channel-major).
"""

import os
from dataclasses import dataclass
from typing import Any, Tuple

import numpy as np

from entropy.alphabet import SymbolAlphabet
from utils.binary import ByteReader, pack, pack_array
from utils.errors import CorruptionError, InputError

MAGIC = b"GLTN"
VERSION = 1


@dataclass(frozen=True, eq=False)
class LatentTensor:
    """Quantized latent (y_hat or z_hat) shaped (channels, height, width)."""

    values: np.ndarray
    alphabet: SymbolAlphabet

    def __post_init__(self):
        values = np.array(self.values, dtype=np.int64)
        if values.ndim != 3:
            raise InputError(f"latent tensors are (channels, height, width), got {values.ndim} dims")
        self.alphabet.check_values(values)
        values.flags.writeable = False
        object.__setattr__(self, 'values', values)

    @property
    def shape(self) -> Tuple[int, int, int]:
        return tuple(int(s) for s in self.values.shape)

    @property
    def size(self) -> int:
        return int(self.values.size)

    def flat(self) -> np.ndarray:
        """Symbols in coding order."""
        return self.values.reshape(-1)

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, LatentTensor):
            return NotImplemented
        return (self.alphabet == other.alphabet
                and self.shape == other.shape
                and bool(np.array_equal(self.values, other.values)))

    __hash__ = None


def quantize(real_tensor: Any, alphabet: SymbolAlphabet) -> LatentTensor:
    """
    Round half away from zero, then clamp into the alphabet.

    Args:
        real_tensor: Real values shaped (channels, height, width)
        alphabet: Target alphabet

    Returns:
        The quantized latent
    """
    values = np.asarray(real_tensor, dtype=np.float64)
    if not np.all(np.isfinite(values)):
        raise InputError("cannot quantize non-finite values")
    rounded = np.sign(values) * np.floor(np.abs(values) + 0.5)
    clamped = np.clip(rounded, alphabet.min_symbol, alphabet.max_symbol)
    return LatentTensor(clamped.astype(np.int64), alphabet)


def serialize_latent(tensor: LatentTensor) -> bytes:
    channels, height, width = tensor.shape
    header = MAGIC + pack("HHIIhh", VERSION, channels, height, width,
                          tensor.alphabet.min_symbol, tensor.alphabet.max_symbol)
    return header + pack_array(tensor.flat(), 'i2')


def parse_latent(data: bytes) -> LatentTensor:
    reader = ByteReader(data, "latent file")
    reader.expect_magic(MAGIC)
    version, channels, height, width, low, high = reader.unpack("HHIIhh")
    if version != VERSION:
        raise CorruptionError(f"latent file: unsupported version {version}")
    values = reader.array('i2', channels * height * width)
    reader.expect_end()
    return LatentTensor(values.reshape(channels, height, width), SymbolAlphabet(low, high))


def save_latent(tensor: LatentTensor, path: str) -> str:
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, 'wb') as f:
        f.write(serialize_latent(tensor))
    return path


def load_latent(path: str) -> LatentTensor:
    with open(path, 'rb') as f:
        return parse_latent(f.read())
