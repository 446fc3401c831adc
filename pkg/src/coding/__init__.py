"""
Lossless coding: latent tensors, fixed-point CDF tables, the range coder
and the GLC1 container.
"""

from .bitstream import FLAG_HYPER, Bitstream
from .cdf_table import DEFAULT_PRECISION, CdfTable, build_cdf_table, build_tables
from .codec import TableSource, decode, decode_hyper, decode_symbols, encode, encode_symbols
from .latent import LatentTensor, load_latent, parse_latent, quantize, save_latent, serialize_latent
from .range_coder import RangeDecoder, RangeEncoder

__all__ = [
    'LatentTensor',
    'quantize',
    'serialize_latent',
    'parse_latent',
    'save_latent',
    'load_latent',
    'CdfTable',
    'DEFAULT_PRECISION',
    'build_cdf_table',
    'build_tables',
    'TableSource',
    'RangeEncoder',
    'RangeDecoder',
    'Bitstream',
    'FLAG_HYPER',
    'encode',
    'decode',
    'decode_hyper',
    'encode_symbols',
    'decode_symbols',
]
