"""
Little-endian binary reading helpers shared by the file formats.
"""

import struct
from typing import Tuple

import numpy as np

from .errors import CorruptionError


class ByteReader:
    """Sequential reader over an in-memory byte string."""

    def __init__(self, data: bytes, what: str = "file"):
        self.data = bytes(data)
        self.offset = 0
        self.what = what

    @property
    def remaining(self) -> int:
        return len(self.data) - self.offset

    def read(self, count: int) -> bytes:
        if count < 0 or self.remaining < count:
            raise CorruptionError(
                f"{self.what} truncated: needed {count} bytes at offset {self.offset}, "
                f"{self.remaining} left"
            )
        chunk = self.data[self.offset:self.offset + count]
        self.offset += count
        return chunk

    def unpack(self, fmt: str) -> Tuple:
        fmt = '<' + fmt
        return struct.unpack(fmt, self.read(struct.calcsize(fmt)))

    def array(self, dtype: str, count: int) -> np.ndarray:
        dtype = np.dtype(dtype).newbyteorder('<')
        raw = self.read(dtype.itemsize * count)
        return np.frombuffer(raw, dtype=dtype).astype(dtype.newbyteorder('='))

    def expect_magic(self, magic: bytes):
        found = self.read(len(magic))
        if found != magic:
            raise CorruptionError(f"{self.what}: bad magic {found!r}, expected {magic!r}")

    def expect_end(self):
        if self.remaining:
            raise CorruptionError(f"{self.what}: {self.remaining} unexpected trailing bytes")


def pack(fmt: str, *values) -> bytes:
    return struct.pack('<' + fmt, *values)


def pack_array(values, dtype: str) -> bytes:
    return np.ascontiguousarray(values, dtype=np.dtype(dtype).newbyteorder('<')).tobytes()
