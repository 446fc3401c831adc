"""
Rate-distortion evaluation: rate estimates, bpp, the RDO cost and lambda sweeps.
"""

from .manifest import ManifestEntry, load_manifest, parse_shape
from .measure import StreamMeasurement, coding_tables, hyper_coding_tables, measure_stream
from .objective import (
    RdoConfig,
    as_alphabet,
    bpp,
    bpp_tier,
    hyper_rate_bits,
    lambda_list,
    rate_bits,
    rd_cost,
    symbol_bits,
)
from .report import CSV_HEADER, RdInput, RdReport, RdRow
from .sweep import evaluate_input, rd_sweep
from .synthetic import generate_model, random_gllmm, synth_hyper_latents, synth_latents

__all__ = [
    'RdoConfig',
    'rate_bits',
    'hyper_rate_bits',
    'symbol_bits',
    'as_alphabet',
    'bpp',
    'bpp_tier',
    'rd_cost',
    'lambda_list',
    'RdInput',
    'RdRow',
    'RdReport',
    'CSV_HEADER',
    'rd_sweep',
    'evaluate_input',
    'synth_latents',
    'synth_hyper_latents',
    'random_gllmm',
    'generate_model',
    'StreamMeasurement',
    'measure_stream',
    'coding_tables',
    'hyper_coding_tables',
    'ManifestEntry',
    'load_manifest',
    'parse_shape',
]
