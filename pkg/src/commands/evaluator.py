"""
Evaluator Command Module

Scores a distorted image against its reference with MS-SSIM, DISTS and
their weighted combination.
"""

import argparse
from typing import Any, Dict

from metrics.distortion import K_DI, K_MS, combined_distortion
from metrics.dists import DistsSettings, dists_score, load_features, uniform_dists_weights
from metrics.images import load_ppm
from metrics.ms_ssim import MsSsimSettings, ms_ssim
from .base_command import BaseCommand


class MetricsCommand(BaseCommand):
    """Computes the distortion terms of the RDO objective for one image pair."""

    name = "metrics"
    help = "compute MS-SSIM, DISTS and the combined distortion of two images"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser):
        parser.add_argument('--reference', required=True, help='Reference image (P6)')
        parser.add_argument('--distorted', required=True, help='Distorted image (P6)')
        parser.add_argument('--features-reference', help='Reference feature file (DFTR)')
        parser.add_argument('--features-distorted', help='Distorted feature file (DFTR)')
        parser.add_argument('--k-ms', type=float, help='Weight of the MS-SSIM loss')
        parser.add_argument('--k-di', type=float, help='Weight of DISTS')
        parser.add_argument('--allow-scale-reduction', action='store_true',
                            help='Use fewer MS-SSIM scales for small images instead of failing')

    def run(self, args: argparse.Namespace) -> Dict[str, Any]:
        if args.k_ms is not None:
            self.config.set('rdo.k_ms', args.k_ms)
        if args.k_di is not None:
            self.config.set('rdo.k_di', args.k_di)
        if args.allow_scale_reduction:
            self.config.set('metrics.ms_ssim.allow_scale_reduction', True)
        k_ms = float(self.config.get('rdo.k_ms', K_MS))
        k_di = float(self.config.get('rdo.k_di', K_DI))

        reference = load_ppm(args.reference)
        distorted = load_ppm(args.distorted)
        score = ms_ssim(reference, distorted, MsSsimSettings.from_config(self.config))
        loss = 1.0 - score

        dists = None
        if args.features_reference and args.features_distorted:
            fx, weights = load_features(args.features_reference)
            fy, distorted_weights = load_features(args.features_distorted)
            weights = weights or distorted_weights or uniform_dists_weights(fx.shapes)
            dists = dists_score(fx, fy, weights, DistsSettings.from_config(self.config))
        elif args.features_reference or args.features_distorted:
            self.logger.warning("DISTS needs both feature files; reporting it as absent")

        combined = combined_distortion(loss, 0.0 if dists is None else dists, k_ms, k_di)

        return self.result({
            "ms_ssim": score,
            "ms_ssim_loss": loss,
            "dists": "absent" if dists is None else dists,
            "k_ms": k_ms,
            "k_di": k_di,
            "combined": combined,
            "dists_term": "omitted" if dists is None else "included",
        })
