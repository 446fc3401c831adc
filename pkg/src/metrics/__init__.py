"""
Perceptual distortion: MS-SSIM, DISTS aggregation and their combination.
"""

from .distortion import K_DI, K_MS, combined_distortion
from .dists import (
    DistsSettings,
    DistsWeights,
    FeatureStack,
    dists_score,
    load_features,
    parse_features,
    save_features,
    serialize_features,
    uniform_dists_weights,
)
from .images import ImageRaster, load_ppm, parse_ppm, save_ppm, serialize_ppm
from .ms_ssim import MsSsimSettings, SsimComponents, ms_ssim, ms_ssim_loss, ssim_components

__all__ = [
    'ImageRaster',
    'load_ppm',
    'save_ppm',
    'parse_ppm',
    'serialize_ppm',
    'MsSsimSettings',
    'SsimComponents',
    'ms_ssim',
    'ms_ssim_loss',
    'ssim_components',
    'FeatureStack',
    'DistsWeights',
    'DistsSettings',
    'dists_score',
    'uniform_dists_weights',
    'save_features',
    'load_features',
    'serialize_features',
    'parse_features',
    'K_MS',
    'K_DI',
    'combined_distortion',
]
