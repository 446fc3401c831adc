"""
End-to-end stream measurement: estimate, encode, decode and compare.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional

import numpy as np

from coding.bitstream import Bitstream
from coding.cdf_table import DEFAULT_PRECISION, CdfTable, build_tables
from coding.codec import decode, decode_hyper, encode
from coding.latent import LatentTensor
from entropy.alphabet import PROBABILITY_FLOOR
from entropy.model import EntropyModel
from entropy.symbol_map import SymbolMap
from .objective import as_alphabet, hyper_rate_bits, rate_bits

logger = logging.getLogger(__name__)


@dataclass
class StreamMeasurement:
    """Estimated versus coded size of one (y_hat, z_hat) pair."""

    stream: Bitstream
    estimated_bits: float
    fixed_point_bits: float
    payload_bits: int
    round_trip: bool

    @property
    def container_bits(self) -> int:
        return 8 * len(self.stream.to_bytes())

    def to_dict(self) -> Dict[str, Any]:
        return {
            "estimated_bits": self.estimated_bits,
            "fixed_point_bits": self.fixed_point_bits,
            "payload_bits": self.payload_bits,
            "container_bits": self.container_bits,
            "round_trip": self.round_trip,
        }


def fixed_point_bits(tensor: LatentTensor, tables: SymbolMap[CdfTable]) -> float:
    """Ideal code length under the fixed-point table frequencies."""
    frequencies = np.stack([table.frequencies for table in tables.items])
    positions = tensor.flat() - tensor.alphabet.min_symbol
    chosen = frequencies[tables.slot_indices(), positions]
    precision = np.array([table.precision_bits for table in tables.items])[tables.slot_indices()]
    return float(np.sum(precision - np.log2(chosen)))


def coding_tables(model: EntropyModel, shape, precision_bits: int = DEFAULT_PRECISION,
                  floor: float = PROBABILITY_FLOOR) -> SymbolMap[CdfTable]:
    return build_tables(model.y_distributions(shape, floor), precision_bits)


def hyper_coding_tables(model: EntropyModel, shape, precision_bits: int = DEFAULT_PRECISION,
                        floor: float = PROBABILITY_FLOOR) -> SymbolMap[CdfTable]:
    return build_tables(model.z_distributions(shape, floor), precision_bits)


def measure_stream(tensor: LatentTensor, model: EntropyModel,
                   precision_bits: int = DEFAULT_PRECISION,
                   hyper: Optional[LatentTensor] = None,
                   floor: float = PROBABILITY_FLOOR) -> StreamMeasurement:
    """
    Encode a latent (and optional hyper-latent), decode it back and report sizes.

    Args:
        tensor: Main latent in the model's ŷ alphabet
        model: Entropy model supplying tables and the model id
        precision_bits: CDF table precision
        hyper: Optional hyper-latent in the model's ẑ alphabet
        floor: Probability floor for the tables and the estimate

    Returns:
        Measurement with the encoded container
    """
    tensor = as_alphabet(tensor, model.y_alphabet)
    if hyper is not None:
        hyper = as_alphabet(hyper, model.z_alphabet)
    tables = coding_tables(model, tensor.shape, precision_bits, floor)
    estimated = rate_bits(tensor, model, floor)
    fixed = fixed_point_bits(tensor, tables)
    hyper_tables = None
    if hyper is not None:
        hyper_tables = hyper_coding_tables(model, hyper.shape, precision_bits, floor)
        estimated += hyper_rate_bits(hyper, model, floor)
        fixed += fixed_point_bits(hyper, hyper_tables)

    stream = encode(tensor, tables, model.model_id, hyper, hyper_tables)
    parsed = Bitstream.from_bytes(stream.to_bytes())
    round_trip = decode(parsed, tables) == tensor
    if hyper is not None:
        round_trip = round_trip and decode_hyper(parsed, hyper_tables, hyper.shape,
                                                 model.z_alphabet) == hyper

    measurement = StreamMeasurement(stream, estimated, fixed, stream.payload_bits, round_trip)
    logger.debug("stream measurement: %s", measurement.to_dict())
    return measurement
