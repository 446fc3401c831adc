"""
YAML manifests listing the inputs of a rate-distortion report.

Example:

    inputs:
      - id: kodim01
        reference: images/kodim01.ppm
        distorted: decoded/kodim01.ppm
        features_reference: features/kodim01_ref.dftr
        features_distorted: features/kodim01_dec.dftr
        latent: latents/kodim01.gltn
        hyper_latent: latents/kodim01_z.gltn
      - id: synthetic-a
        synthetic: 8x16x16
        seed: 7

Relative paths resolve against the manifest's directory.
"""

import os
from dataclasses import dataclass
from typing import List, Optional, Tuple

import yaml

from coding.latent import load_latent
from entropy.model import EntropyModel
from metrics.dists import load_features
from metrics.images import load_ppm
from utils.errors import InputError
from .report import RdInput
from .synthetic import synth_latents

_PATH_KEYS = ("reference", "distorted", "features_reference", "features_distorted",
              "latent", "hyper_latent")


def parse_shape(text: str) -> Tuple[int, int, int]:
    """Parse "CxHxW" into a shape triple."""
    try:
        parts = tuple(int(part) for part in str(text).lower().split('x'))
    except ValueError as e:
        raise InputError(f"invalid shape {text!r}, expected CxHxW") from e
    if len(parts) != 3 or min(parts) < 1:
        raise InputError(f"invalid shape {text!r}, expected three positive sizes CxHxW")
    return parts


@dataclass
class ManifestEntry:
    """One manifest input, loaded lazily so a broken entry fails only its own rows."""

    input_id: str
    reference: Optional[str] = None
    distorted: Optional[str] = None
    features_reference: Optional[str] = None
    features_distorted: Optional[str] = None
    latent: Optional[str] = None
    hyper_latent: Optional[str] = None
    synthetic: Optional[str] = None
    seed: int = 0

    def load(self, model: EntropyModel) -> RdInput:
        """Read every referenced file, or synthesize the latent from ``model``."""
        if self.latent:
            latent = load_latent(self.latent)
        elif self.synthetic:
            latent = synth_latents(model, parse_shape(self.synthetic), self.seed)
        else:
            raise InputError(f"input {self.input_id}: needs 'latent' or 'synthetic'")

        features_reference = features_distorted = weights = None
        if self.features_reference and self.features_distorted:
            features_reference, weights = load_features(self.features_reference)
            features_distorted, distorted_weights = load_features(self.features_distorted)
            weights = weights or distorted_weights

        return RdInput(
            input_id=self.input_id,
            latent=latent,
            hyper_latent=load_latent(self.hyper_latent) if self.hyper_latent else None,
            reference=load_ppm(self.reference) if self.reference else None,
            distorted=load_ppm(self.distorted) if self.distorted else None,
            features_reference=features_reference,
            features_distorted=features_distorted,
            dists_weights=weights,
        )


def load_manifest(path: str) -> List[ManifestEntry]:
    """
    Parse a manifest file.

    Args:
        path: Manifest YAML path

    Returns:
        Entries in file order; empty when the file lists no inputs
    """
    with open(path, 'r', encoding='utf-8') as f:
        try:
            document = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise InputError(f"malformed manifest {path}: {e}") from e

    document = document or {}
    if not isinstance(document, dict):
        raise InputError(f"manifest {path} must be a mapping with an 'inputs' list")
    items = document.get('inputs') or []
    if not isinstance(items, list):
        raise InputError(f"manifest {path}: 'inputs' must be a list")

    base = os.path.dirname(os.path.abspath(path))
    entries = []
    for index, item in enumerate(items):
        if not isinstance(item, dict) or 'id' not in item:
            raise InputError(f"manifest {path}: input #{index + 1} needs an 'id'")
        fields = {key: os.path.join(base, str(item[key])) for key in _PATH_KEYS if item.get(key)}
        entries.append(ManifestEntry(
            input_id=str(item['id']),
            synthetic=str(item['synthetic']) if item.get('synthetic') else None,
            seed=int(item.get('seed', 0)),
            **fields,
        ))
    return entries
