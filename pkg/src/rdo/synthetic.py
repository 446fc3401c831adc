"""
Seeded generators for test data: latents drawn from an entropy model and
random valid entropy models.
"""

import logging
from typing import Optional, Sequence, Tuple

import numpy as np

from coding.latent import LatentTensor
from entropy.alphabet import SymbolAlphabet
from entropy.factorized import FactorizedDensityParams, factorized_masses
from entropy.gllmm import FAMILY_NAMES, GllmmParams, discretized_masses
from entropy.model import EntropyModel
from entropy.symbol_map import PER_CHANNEL, PER_ENTRY, Shape, SymbolMap
from entropy.validation import validate_params
from utils.errors import ParameterDomainError

logger = logging.getLogger(__name__)


def _sample(masses: np.ndarray, slots: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Inverse-CDF sampling: one alphabet position per slot index."""
    cumulative = np.cumsum(masses, axis=1)
    cumulative /= cumulative[:, -1:]
    cumulative[:, -1] = 1.0
    uniforms = rng.random(slots.shape[0])
    positions = np.empty(slots.shape[0], dtype=np.int64)
    order = np.argsort(slots, kind='stable')
    bounds = np.searchsorted(slots[order], np.arange(masses.shape[0] + 1))
    for slot in range(masses.shape[0]):
        members = order[bounds[slot]:bounds[slot + 1]]
        positions[members] = np.searchsorted(cumulative[slot], uniforms[members], side='right')
    return np.minimum(positions, masses.shape[1] - 1)


def synth_latents(model: EntropyModel, shape: Shape, seed: int) -> LatentTensor:
    """
    Draw a main latent from the model's discretized GLLMM distributions.

    Sampling uses the raw bin masses, before the probability floor.

    Args:
        model: Entropy model; its parameter sets must be valid
        shape: (channels, height, width) of the latent
        seed: Seed of the generator

    Returns:
        Latent tensor reproducible from ``seed``
    """
    model.validate().raise_if_invalid("entropy model")
    params = model.gllmm_map(shape)
    masses = np.stack([discretized_masses(p, model.y_alphabet) for p in params.items])
    rng = np.random.default_rng(seed)
    positions = _sample(masses, params.slot_indices(), rng)
    values = positions.reshape(params.shape) + model.y_alphabet.min_symbol
    return LatentTensor(values, model.y_alphabet)


def synth_hyper_latents(params: FactorizedDensityParams, shape: Shape,
                        alphabet: SymbolAlphabet, seed: int) -> LatentTensor:
    """Draw a hyper-latent channel by channel from the factorized density."""
    validate_params(params).raise_if_invalid("hyperprior")
    shape = tuple(int(s) for s in shape)
    if shape[0] != params.channels:
        raise ParameterDomainError(f"hyper-latent has {shape[0]} channels, hyperprior has {params.channels}")
    layout = SymbolMap.per_channel(range(params.channels), shape)
    masses = np.stack([factorized_masses(params, c, alphabet) for c in range(params.channels)])
    rng = np.random.default_rng(seed)
    positions = _sample(masses, layout.slot_indices(), rng)
    return LatentTensor(positions.reshape(shape) + alphabet.min_symbol, alphabet)


def random_gllmm(rng: np.random.Generator, counts: Sequence[int] = (3, 3, 3)) -> GllmmParams:
    """A valid mixture with Dirichlet weights, spread-out means and moderate scales."""
    if len(counts) != len(FAMILY_NAMES) or min(counts) < 1:
        raise ParameterDomainError(f"component counts must be three values >= 1, got {list(counts)}")
    family_weights = rng.dirichlet(np.ones(len(FAMILY_NAMES)))
    blocks = []
    for count in counts:
        weights = rng.dirichlet(np.ones(count))
        means = rng.normal(0.0, 2.0, size=count)
        spreads = rng.uniform(0.3, 4.0, size=count)
        blocks.append(np.column_stack([weights, means, spreads]))
    return GllmmParams(family_weights, *blocks)


def generate_model(channels: int, seed: int, counts: Sequence[int] = (3, 3, 3),
                   layout: str = PER_CHANNEL, z_channels: int = 4,
                   entry_size: Optional[Tuple[int, int]] = None,
                   y_alphabet: SymbolAlphabet = SymbolAlphabet(-128, 127),
                   z_alphabet: SymbolAlphabet = SymbolAlphabet(-64, 63),
                   layers: int = 4, width: int = 3) -> EntropyModel:
    """
    Random valid entropy model, reproducible from ``seed``.

    Args:
        channels: Main latent channels
        seed: Seed of the generator
        counts: Components per family (K, M, N)
        layout: ``per_channel`` or ``per_entry``
        z_channels: Hyper-latent channels
        entry_size: (height, width) of the latent, required for ``per_entry``
        y_alphabet: Main latent alphabet
        z_alphabet: Hyper-latent alphabet
        layers: Hyperprior layers
        width: Hyperprior layer width

    Returns:
        A model whose ``validate()`` report is clean
    """
    if channels < 1 or z_channels < 1:
        raise ParameterDomainError(f"channel counts must be >= 1, got {channels}, {z_channels}")
    rng = np.random.default_rng(seed)
    entry_shape = None
    if layout == PER_ENTRY:
        if entry_size is None:
            raise ParameterDomainError("per-entry models need the latent height and width")
        entry_shape = (channels, int(entry_size[0]), int(entry_size[1]))
        sets = channels * entry_shape[1] * entry_shape[2]
    elif layout == PER_CHANNEL:
        sets = channels
    else:
        raise ParameterDomainError(f"unknown layout {layout!r}")

    model = EntropyModel(
        gllmm_sets=tuple(random_gllmm(rng, counts) for _ in range(sets)),
        layout=layout,
        channels=channels,
        y_alphabet=y_alphabet,
        z_alphabet=z_alphabet,
        hyperprior=FactorizedDensityParams.random(z_channels, rng, layers, width),
        entry_shape=entry_shape,
    )
    logger.info("generated %s model: %d channels, %d sets, counts %s",
                layout, channels, sets, tuple(counts))
    return model
