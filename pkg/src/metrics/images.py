"""
RGB rasters and the binary portable pixmap (P6) format.
"""

import os
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from utils.errors import InputError

MAXVAL = 255


@dataclass(frozen=True, eq=False)
class ImageRaster:
    """8-bit RGB image stored as a (height, width, 3) array."""

    samples: np.ndarray

    def __post_init__(self):
        samples = np.asarray(self.samples)
        if samples.ndim != 3 or samples.shape[2] != 3:
            raise InputError(f"expected (height, width, 3) samples, got shape {samples.shape}")
        if samples.shape[0] < 1 or samples.shape[1] < 1:
            raise InputError("image needs at least one pixel")
        if np.issubdtype(samples.dtype, np.floating):
            if not np.all(np.isfinite(samples)) or samples.min() < 0 or samples.max() > MAXVAL:
                raise InputError(f"samples must lie in [0, {MAXVAL}]")
            samples = np.rint(samples)
        elif samples.dtype != np.uint8 and (samples.min() < 0 or samples.max() > MAXVAL):
            raise InputError(f"samples must lie in [0, {MAXVAL}]")
        samples = np.array(samples, dtype=np.uint8)
        samples.flags.writeable = False
        object.__setattr__(self, 'samples', samples)

    @property
    def height(self) -> int:
        return int(self.samples.shape[0])

    @property
    def width(self) -> int:
        return int(self.samples.shape[1])

    @property
    def channels(self) -> int:
        return 3

    @property
    def shape(self) -> Tuple[int, int]:
        return self.height, self.width

    @property
    def pixels(self) -> int:
        return self.width * self.height

    def channel(self, index: int) -> np.ndarray:
        """One color plane as float64."""
        return self.samples[:, :, index].astype(np.float64)


def _header_tokens(data: bytes, count: int) -> Tuple[list, int]:
    """Read ``count`` whitespace-separated header tokens, skipping comments."""
    tokens = []
    position = 0
    while len(tokens) < count:
        if position >= len(data):
            raise InputError("P6 header truncated")
        byte = data[position:position + 1]
        if byte.isspace():
            position += 1
        elif byte == b"#":
            end = data.find(b"\n", position)
            position = len(data) if end < 0 else end + 1
        else:
            start = position
            while position < len(data) and not data[position:position + 1].isspace() \
                    and data[position:position + 1] != b"#":
                position += 1
            tokens.append(data[start:position])
    return tokens, position


def parse_ppm(data: bytes) -> ImageRaster:
    """
    Decode a binary P6 image.

    Args:
        data: File contents

    Returns:
        The decoded raster

    Raises:
        InputError: Not a P6 file, maxval other than 255, or wrong data size
    """
    tokens, position = _header_tokens(data, 4)
    if tokens[0] != b"P6":
        raise InputError(f"not a binary PPM (P6) image: magic {tokens[0]!r}")
    try:
        width, height, maxval = (int(token) for token in tokens[1:])
    except ValueError as e:
        raise InputError(f"malformed P6 header: {e}") from e
    if maxval != MAXVAL:
        raise InputError(f"only maxval {MAXVAL} is supported, got {maxval}")
    if width < 1 or height < 1:
        raise InputError(f"invalid image size {width}x{height}")
    if position >= len(data) or not data[position:position + 1].isspace():
        raise InputError("P6 header must end with a single whitespace byte")
    position += 1

    expected = width * height * 3
    pixels = data[position:]
    if len(pixels) != expected:
        raise InputError(f"P6 image {width}x{height} needs {expected} sample bytes, got {len(pixels)}")
    return ImageRaster(np.frombuffer(pixels, dtype=np.uint8).reshape(height, width, 3))


def serialize_ppm(image: ImageRaster) -> bytes:
    header = f"P6\n{image.width} {image.height}\n{MAXVAL}\n".encode("ascii")
    return header + image.samples.tobytes()


def load_ppm(path: str) -> ImageRaster:
    with open(path, 'rb') as f:
        return parse_ppm(f.read())


def save_ppm(image: ImageRaster, path: str) -> str:
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, 'wb') as f:
        f.write(serialize_ppm(image))
    return path
