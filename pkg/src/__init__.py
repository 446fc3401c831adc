"""
GLLMM Codec Toolkit - Source Package

Entropy models, range coding, perceptual metrics and rate-distortion
evaluation for learned image compression latents.
"""

__version__ = "0.1.0"
