"""
Lossless coding of latent tensors with per-symbol CDF tables.
"""

import logging
from typing import Optional

import numpy as np

from entropy.alphabet import SymbolAlphabet
from entropy.symbol_map import Shape, SymbolMap
from utils.errors import CodingError, CorruptionError
from .bitstream import FLAG_HYPER, MODEL_ID_BYTES, Bitstream
from .cdf_table import CdfTable
from .latent import LatentTensor
from .range_coder import RangeDecoder, RangeEncoder

logger = logging.getLogger(__name__)

NO_MODEL = bytes(MODEL_ID_BYTES)

# Resolves the CDF table for every raster index of a tensor.
TableSource = SymbolMap[CdfTable]


def _check_tables(tables: TableSource, shape: Shape, alphabet: SymbolAlphabet,
                  error: type = CodingError):
    if tuple(tables.shape) != tuple(shape):
        raise error(f"tables cover shape {tables.shape}, tensor has shape {shape}")
    for table in tables.items:
        if table.alphabet != alphabet:
            raise error(
                f"table alphabet [{table.alphabet.min_symbol}, {table.alphabet.max_symbol}] does not "
                f"match tensor alphabet [{alphabet.min_symbol}, {alphabet.max_symbol}]"
            )


def encode_symbols(tensor: LatentTensor, tables: TableSource) -> bytes:
    """Range-code every symbol of ``tensor`` in raster order."""
    _check_tables(tables, tensor.shape, tensor.alphabet)
    if tensor.size == 0:
        return b""
    encoder = RangeEncoder()
    offset = tensor.alphabet.min_symbol
    for index, symbol in enumerate(tensor.flat().tolist()):
        table = tables.item_for(index)
        position = symbol - offset
        start = table.cumulative[position]
        encoder.encode(start, table.cumulative[position + 1] - start, table.precision_bits)
    return encoder.finish()


def decode_symbols(payload: bytes, shape: Shape, alphabet: SymbolAlphabet,
                   tables: TableSource) -> LatentTensor:
    """Inverse of ``encode_symbols`` for a known shape."""
    # a header that disagrees with the tables marks a damaged stream
    _check_tables(tables, shape, alphabet, CorruptionError)
    count = int(np.prod(shape))
    if count == 0:
        if payload:
            raise CorruptionError("payload present for an empty tensor")
        return LatentTensor(np.zeros(shape, dtype=np.int64), alphabet)
    if not payload:
        raise CorruptionError(f"empty payload for {count} symbols")

    decoder = RangeDecoder(payload)
    symbols = np.empty(count, dtype=np.int64)
    for index in range(count):
        table = tables.item_for(index)
        position = table.lookup(decoder.target(table.precision_bits))
        start = table.cumulative[position]
        decoder.consume(start, table.cumulative[position + 1] - start)
        symbols[index] = position + alphabet.min_symbol
    if decoder.bytes_consumed < len(payload):
        raise CorruptionError(
            f"{len(payload) - decoder.bytes_consumed} payload bytes left after {count} symbols"
        )
    return LatentTensor(symbols.reshape(shape), alphabet)


def encode(tensor: LatentTensor, tables: TableSource, model_id: bytes = NO_MODEL,
           hyper: Optional[LatentTensor] = None,
           hyper_tables: Optional[TableSource] = None) -> Bitstream:
    """
    Encode a main latent, optionally with its hyper-latent, into a container.

    Args:
        tensor: Main latent y_hat
        tables: CDF table source for ``tensor``
        model_id: Identifier of the entropy model the tables came from
        hyper: Optional hyper-latent z_hat, coded first
        hyper_tables: CDF table source for ``hyper``

    Returns:
        Bitstream with deterministic payloads
    """
    flags = 0
    z_payload = b""
    if hyper is not None:
        if hyper_tables is None:
            raise CodingError("hyper-latent given without its tables")
        z_payload = encode_symbols(hyper, hyper_tables)
        flags |= FLAG_HYPER
    y_payload = encode_symbols(tensor, tables)
    logger.debug("encoded %d symbols into %d + %d payload bytes",
                 tensor.size, len(z_payload), len(y_payload))
    return Bitstream(tensor.shape, tensor.alphabet, model_id, y_payload, z_payload, flags)


def decode(stream: Bitstream, tables: TableSource) -> LatentTensor:
    """Recover the main latent of a container."""
    return decode_symbols(stream.y_payload, stream.shape, stream.alphabet, tables)


def decode_hyper(stream: Bitstream, tables: TableSource, shape: Shape,
                 alphabet: SymbolAlphabet) -> Optional[LatentTensor]:
    """Recover the hyper-latent, or None when the container carries none."""
    if not stream.has_hyper:
        return None
    return decode_symbols(stream.z_payload, shape, alphabet, tables)
