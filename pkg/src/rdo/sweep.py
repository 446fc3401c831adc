"""
Lambda sweeps over a batch of inputs.
"""

import logging
from dataclasses import dataclass, replace
from typing import Optional, Sequence, Union

from entropy.model import EntropyModel
from metrics.distortion import combined_distortion
from metrics.dists import DistsSettings, dists_score, uniform_dists_weights
from metrics.ms_ssim import MsSsimSettings, ms_ssim
from utils.errors import error_kind
from .manifest import ManifestEntry
from .objective import RdoConfig, bpp, hyper_rate_bits, rate_bits, rd_cost
from .report import (
    STATUS_NO_DISTS,
    STATUS_NO_MS_SSIM,
    STATUS_OK,
    STATUS_RATE_ONLY,
    RdInput,
    RdReport,
    RdRow,
)

logger = logging.getLogger(__name__)


@dataclass
class InputEvaluation:
    """Lambda-independent measurements of one input."""

    bits: float
    bpp: float
    ms_ssim: Optional[float]
    dists: Optional[float]
    combined: Optional[float]
    status: str


def evaluate_input(item: RdInput, model: EntropyModel, config: RdoConfig,
                   ms_settings: MsSsimSettings = MsSsimSettings(),
                   dists_settings: DistsSettings = DistsSettings()) -> InputEvaluation:
    """
    Rate and distortion of one input.

    Distortion terms without their inputs are left out of ``combined`` and
    reflected in the status.
    """
    bits = rate_bits(item.latent, model, config.probability_floor)
    if item.hyper_latent is not None:
        bits += hyper_rate_bits(item.hyper_latent, model, config.probability_floor)
    width, height = item.image_size(config.downsampling_factor)

    ms_value = ms_ssim(item.reference, item.distorted, ms_settings) if item.has_images else None
    dists_value = None
    if item.has_features:
        weights = item.dists_weights or uniform_dists_weights(item.features_reference.shapes)
        dists_value = dists_score(item.features_reference, item.features_distorted, weights,
                                  dists_settings)

    if ms_value is not None and dists_value is not None:
        status = STATUS_OK
        combined = combined_distortion(1.0 - ms_value, dists_value, config.k_ms, config.k_di)
    elif ms_value is not None:
        status = STATUS_NO_DISTS
        combined = combined_distortion(1.0 - ms_value, 0.0, config.k_ms, config.k_di)
    elif dists_value is not None:
        status = STATUS_NO_MS_SSIM
        combined = combined_distortion(0.0, dists_value, config.k_ms, config.k_di)
    else:
        status = STATUS_RATE_ONLY
        combined = None
    return InputEvaluation(bits, bpp(bits, width, height), ms_value, dists_value, combined, status)


def rd_sweep(inputs: Sequence[Union[RdInput, ManifestEntry]], model: EntropyModel,
             lambdas: Optional[Sequence[float]] = None, config: RdoConfig = RdoConfig(),
             ms_settings: MsSsimSettings = MsSsimSettings(),
             dists_settings: DistsSettings = DistsSettings()) -> RdReport:
    """
    One report row per (input, lambda).

    A failing input does not abort the sweep: each of its rows carries an
    ``error:<kind>`` status instead of values.

    Args:
        inputs: Loaded inputs or manifest entries still to be loaded
        model: Entropy model for the rate
        lambdas: Rate multipliers, defaults to ``config.lambdas``
        config: RDO settings
        ms_settings: MS-SSIM settings
        dists_settings: DISTS settings

    Returns:
        Report sorted by input id, then by lambda position
    """
    if lambdas is not None:
        config = replace(config, lambdas=tuple(lambdas))

    keyed_rows = []
    for position, item in enumerate(inputs, 1):
        input_id = item.input_id
        logger.info("evaluating input %d/%d: %s", position, len(inputs), input_id)
        try:
            source = item.load(model) if isinstance(item, ManifestEntry) else item
            evaluation = evaluate_input(source, model, config, ms_settings, dists_settings)
        except Exception as e:
            kind = error_kind(e)
            logger.warning("input %s failed (%s): %s", input_id, kind, e)
            rows = [RdRow(input_id, lam, status=f"error:{kind}") for lam in config.lambdas]
        else:
            rows = []
            for lam in config.lambdas:
                distortion = evaluation.combined or 0.0
                rows.append(RdRow(
                    input_id=input_id,
                    lam=lam,
                    bits=evaluation.bits,
                    bpp=evaluation.bpp,
                    ms_ssim=evaluation.ms_ssim,
                    dists=evaluation.dists,
                    combined=evaluation.combined,
                    rd_cost=rd_cost(distortion, evaluation.bits, lam),
                    status=evaluation.status,
                ))
        keyed_rows.extend(((input_id, index), row) for index, row in enumerate(rows))

    keyed_rows.sort(key=lambda pair: pair[0])
    report = RdReport(
        rows=[row for _, row in keyed_rows],
        metadata={
            "model_id": model.model_id.hex(),
            "lambdas": list(config.lambdas),
            "k_ms": config.k_ms,
            "k_di": config.k_di,
        },
    )
    logger.info("sweep finished: %d rows, %d failed", len(report.rows), report.failed_rows)
    return report
