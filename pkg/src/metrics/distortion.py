"""
Weighted combination of the MS-SSIM loss and DISTS.
"""

import math

from utils.errors import ParameterDomainError

# 765 * 2**-5
K_MS = 23.90625
K_DI = 1.0


def combined_distortion(msssim_loss: float, dists: float, k_ms: float = K_MS,
                        k_di: float = K_DI) -> float:
    """
    k_ms * msssim_loss + k_di * dists.

    Raises:
        ParameterDomainError: Non-finite input or a negative weight
    """
    values = (msssim_loss, dists, k_ms, k_di)
    if not all(math.isfinite(v) for v in values):
        raise ParameterDomainError(f"distortion inputs must be finite, got {values}")
    if k_ms < 0.0 or k_di < 0.0:
        raise ParameterDomainError(f"distortion weights must be >= 0, got k_ms={k_ms}, k_di={k_di}")
    return k_ms * msssim_loss + k_di * dists
