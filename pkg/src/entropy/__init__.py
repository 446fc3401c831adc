"""
Entropy models: GLLMM for the main latent, factorized density for the
hyper-latent, and the model file that carries both.
"""

from .alphabet import PROBABILITY_FLOOR, DiscreteDistribution, SymbolAlphabet
from .distributions import (
    gaussian_cdf,
    gaussian_pdf,
    laplace_cdf,
    laplace_pdf,
    logistic_cdf,
    logistic_pdf,
)
from .factorized import (
    FactorizedDensityParams,
    discretize_channel,
    factorized_cdf,
    factorized_masses,
    factorized_prob,
)
from .gllmm import (
    GllmmParams,
    discretize,
    discretized_masses,
    discretized_prob,
    gllmm_cdf,
    gllmm_pdf,
    mixture_entropy_bits,
)
from .model import EntropyModel
from .model_file import dump_model_text, load_model, load_model_text, save_model, serialize_model
from .symbol_map import SymbolMap
from .validation import ValidationReport, Violation, validate_params

__all__ = [
    'PROBABILITY_FLOOR',
    'SymbolAlphabet',
    'DiscreteDistribution',
    'gaussian_cdf',
    'gaussian_pdf',
    'laplace_cdf',
    'laplace_pdf',
    'logistic_cdf',
    'logistic_pdf',
    'GllmmParams',
    'gllmm_cdf',
    'gllmm_pdf',
    'discretized_prob',
    'discretized_masses',
    'discretize',
    'mixture_entropy_bits',
    'FactorizedDensityParams',
    'factorized_cdf',
    'factorized_prob',
    'factorized_masses',
    'discretize_channel',
    'EntropyModel',
    'SymbolMap',
    'ValidationReport',
    'Violation',
    'validate_params',
    'save_model',
    'load_model',
    'serialize_model',
    'dump_model_text',
    'load_model_text',
]
