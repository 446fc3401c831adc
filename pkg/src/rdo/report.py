"""
Rate-distortion report rows and their CSV form.
"""

import csv
import io
import os
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from coding.latent import LatentTensor
from metrics.dists import DistsWeights, FeatureStack
from metrics.images import ImageRaster

CSV_HEADER = ("input", "lambda", "bits", "bpp", "ms_ssim", "dists", "combined", "rd_cost", "status")

STATUS_OK = "ok"
STATUS_NO_DISTS = "partial:no-dists"
STATUS_NO_MS_SSIM = "partial:no-ms-ssim"
STATUS_RATE_ONLY = "partial:rate-only"


def format_number(value: Optional[float]) -> str:
    """Nine significant digits; empty for an absent value."""
    if value is None:
        return ""
    return f"{value:.9g}"


@dataclass
class RdInput:
    """Everything one report input contributes: latents plus optional images and features."""

    input_id: str
    latent: LatentTensor
    hyper_latent: Optional[LatentTensor] = None
    reference: Optional[ImageRaster] = None
    distorted: Optional[ImageRaster] = None
    features_reference: Optional[FeatureStack] = None
    features_distorted: Optional[FeatureStack] = None
    dists_weights: Optional[DistsWeights] = None

    @property
    def has_images(self) -> bool:
        return self.reference is not None and self.distorted is not None

    @property
    def has_features(self) -> bool:
        return self.features_reference is not None and self.features_distorted is not None

    def image_size(self, downsampling_factor: int) -> Tuple[int, int]:
        """(width, height) in pixels, derived from the latent when no image is given."""
        if self.reference is not None:
            return self.reference.width, self.reference.height
        _, height, width = self.latent.shape
        return width * downsampling_factor, height * downsampling_factor


@dataclass
class RdRow:
    input_id: str
    lam: float
    bits: Optional[float] = None
    bpp: Optional[float] = None
    ms_ssim: Optional[float] = None
    dists: Optional[float] = None
    combined: Optional[float] = None
    rd_cost: Optional[float] = None
    status: str = STATUS_OK

    @property
    def failed(self) -> bool:
        return self.status.startswith("error")

    def cells(self) -> List[str]:
        numbers = (self.lam, self.bits, self.bpp, self.ms_ssim, self.dists, self.combined, self.rd_cost)
        return [self.input_id] + [format_number(v) for v in numbers] + [self.status]


@dataclass
class RdReport:
    """Rows of one sweep plus provenance metadata."""

    rows: List[RdRow] = field(default_factory=list)
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def failed_rows(self) -> int:
        return sum(1 for row in self.rows if row.failed)

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for row in self.rows:
            writer.writerow(row.cells())
        return buffer.getvalue()

    def write_csv(self, path: str) -> str:
        directory = os.path.dirname(path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(path, 'w', encoding='utf-8', newline='') as f:
            f.write(self.to_csv())
        return path

    def summary(self) -> Dict[str, Any]:
        return {
            "rows": len(self.rows),
            "failed_rows": self.failed_rows,
            "inputs": len({row.input_id for row in self.rows}),
            **self.metadata,
        }
