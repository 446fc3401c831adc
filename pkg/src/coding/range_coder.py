"""
Byte-oriented carry-less range coder with 64-bit state.

A byte leaves the coder whenever the top byte of ``low`` and
``low + range`` agree (range below 2**56). When the interval straddles a
top-byte boundary while the range has fallen below 2**40, the range is cut
back to that boundary so the byte can be emitted without a carry.
"""

from utils.errors import CorruptionError

STATE_BITS = 64
MASK = (1 << STATE_BITS) - 1
TOP = 1 << (STATE_BITS - 8)
BOTTOM = 1 << 40

# Bytes the decoder may read past the payload before calling it truncated.
MAX_PADDING = STATE_BITS // 8


class RangeEncoder:
    """Encoder side; feed intervals with ``encode`` then call ``finish``."""

    def __init__(self):
        self.low = 0
        self.range = MASK
        self.output = bytearray()

    def encode(self, start: int, frequency: int, precision_bits: int):
        """Narrow the interval to [start, start + frequency) of 2**precision_bits."""
        r = self.range >> precision_bits
        self.low += r * start
        self.range = r * frequency
        self._normalize()

    def _normalize(self):
        while True:
            if (self.low ^ (self.low + self.range)) < TOP:
                pass
            elif self.range < BOTTOM:
                self.range = -self.low & (BOTTOM - 1)
            else:
                break
            self.output.append(self.low >> (STATE_BITS - 8))
            self.low = (self.low << 8) & MASK
            self.range = (self.range << 8) & MASK

    def finish(self) -> bytes:
        """
        Flush the shortest byte prefix that pins a value inside the interval.

        The decoder pads the stream with zero bytes, so trailing zeros of
        the chosen value are left out.
        """
        high = self.low + self.range
        for count in range(1, STATE_BITS // 8 + 1):
            shift = STATE_BITS - 8 * count
            value = ((self.low + (1 << shift) - 1) >> shift) << shift
            if value < high:
                for index in range(count):
                    self.output.append((value >> (STATE_BITS - 8 * (index + 1))) & 0xff)
                break
        return bytes(self.output)


class RangeDecoder:
    """Decoder side; call ``target`` then ``consume`` once per symbol."""

    def __init__(self, payload: bytes):
        self.payload = payload
        self.position = 0
        self.padding = 0
        self.low = 0
        self.range = MASK
        self.code = 0
        self._r = 0
        for _ in range(STATE_BITS // 8):
            self.code = (self.code << 8) | self._read_byte()

    def _read_byte(self) -> int:
        if self.position < len(self.payload):
            byte = self.payload[self.position]
            self.position += 1
            return byte
        self.padding += 1
        if self.padding > MAX_PADDING:
            raise CorruptionError("payload truncated: decoder ran past the end of the stream")
        return 0

    def target(self, precision_bits: int) -> int:
        """Cumulative-frequency value the next symbol's interval must contain."""
        self._r = self.range >> precision_bits
        value = (self.code - self.low) // self._r
        if not 0 <= value < (1 << precision_bits):
            raise CorruptionError("payload does not decode under the supplied tables")
        return value

    def consume(self, start: int, frequency: int):
        """Apply the interval of the symbol found for the last ``target``."""
        self.low += self._r * start
        self.range = self._r * frequency
        while True:
            if (self.low ^ (self.low + self.range)) < TOP:
                pass
            elif self.range < BOTTOM:
                self.range = -self.low & (BOTTOM - 1)
            else:
                break
            self.code = ((self.code << 8) | self._read_byte()) & MASK
            self.low = (self.low << 8) & MASK
            self.range = (self.range << 8) & MASK

    @property
    def bytes_consumed(self) -> int:
        return self.position

