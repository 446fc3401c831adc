"""
"GLC1" bitstream container.

Little-endian layout:

    magic "GLC1" | version u16 | flags u16 | channels u16 | height u32 |
    width u32 | alphabet min/max i16 i16 | model id 8 bytes |
    header checksum u32 (CRC-32 of every preceding header byte) |
    z payload length u32 + bytes | y payload length u32 + bytes

Version 1 codes symbols in raster order, channel-major. Flag bit 0 marks
a present hyper-latent sub-stream.
"""

import struct
import zlib
from dataclasses import dataclass
from typing import Tuple

from entropy.alphabet import SymbolAlphabet
from utils.binary import ByteReader, pack
from utils.errors import CorruptionError

MAGIC = b"GLC1"
VERSION = 1
FLAG_HYPER = 0x0001
MODEL_ID_BYTES = 8

_HEADER_FORMAT = "<4sHHHIIhh8s"
HEADER_BYTES = struct.calcsize(_HEADER_FORMAT) + 4


@dataclass(frozen=True)
class Bitstream:
    """Parsed container: header fields plus the two payloads."""

    shape: Tuple[int, int, int]
    alphabet: SymbolAlphabet
    model_id: bytes
    y_payload: bytes
    z_payload: bytes = b""
    flags: int = 0
    version: int = VERSION

    def __post_init__(self):
        if len(self.model_id) != MODEL_ID_BYTES:
            raise CorruptionError(f"model id must be {MODEL_ID_BYTES} bytes")
        if self.z_payload and not self.flags & FLAG_HYPER:
            raise CorruptionError("hyper-latent payload present without its flag")

    @property
    def has_hyper(self) -> bool:
        return bool(self.flags & FLAG_HYPER)

    @property
    def symbol_count(self) -> int:
        channels, height, width = self.shape
        return channels * height * width

    @property
    def payload_bits(self) -> int:
        return 8 * (len(self.y_payload) + len(self.z_payload))

    def header_bytes(self) -> bytes:
        channels, height, width = self.shape
        fields = struct.pack(_HEADER_FORMAT, MAGIC, self.version, self.flags, channels, height,
                             width, self.alphabet.min_symbol, self.alphabet.max_symbol,
                             self.model_id)
        return fields + pack("I", zlib.crc32(fields) & 0xffffffff)

    def to_bytes(self) -> bytes:
        return b"".join([
            self.header_bytes(),
            pack("I", len(self.z_payload)), self.z_payload,
            pack("I", len(self.y_payload)), self.y_payload,
        ])

    @classmethod
    def from_bytes(cls, data: bytes) -> 'Bitstream':
        """
        Parse and integrity-check a container.

        Args:
            data: Complete container bytes

        Returns:
            The parsed stream

        Raises:
            CorruptionError: Bad magic, version, checksum or payload lengths
        """
        reader = ByteReader(data, "bitstream")
        fields = reader.read(struct.calcsize(_HEADER_FORMAT))
        (checksum,) = reader.unpack("I")
        magic, version, flags, channels, height, width, low, high, model_id = struct.unpack(
            _HEADER_FORMAT, fields)
        if magic != MAGIC:
            raise CorruptionError(f"bitstream: bad magic {magic!r}, expected {MAGIC!r}")
        if zlib.crc32(fields) & 0xffffffff != checksum:
            raise CorruptionError("bitstream: header checksum mismatch")
        if version != VERSION:
            raise CorruptionError(f"bitstream: unsupported version {version}")

        (z_length,) = reader.unpack("I")
        z_payload = reader.read(z_length)
        (y_length,) = reader.unpack("I")
        y_payload = reader.read(y_length)
        reader.expect_end()

        try:
            alphabet = SymbolAlphabet(low, high)
        except ValueError as e:
            raise CorruptionError(f"bitstream: invalid alphabet in header: {e}") from e
        return cls((channels, height, width), alphabet, model_id, y_payload, z_payload,
                   flags, version)
