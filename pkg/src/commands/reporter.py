"""
Reporter Command Module

Runs a lambda sweep over the inputs of a manifest and writes the CSV report.
"""

import argparse
from typing import Any, Dict

from metrics.dists import DistsSettings
from metrics.ms_ssim import MsSsimSettings
from rdo.manifest import load_manifest
from rdo.objective import RdoConfig, lambda_list
from rdo.sweep import rd_sweep
from utils.errors import EXIT_FAILURE
from .base_command import BaseCommand


class RdReportCommand(BaseCommand):
    """Batch rate-distortion evaluation; failed inputs become error rows."""

    name = "rd-report"
    help = "evaluate a manifest of inputs over a lambda list and write a CSV report"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser):
        parser.add_argument('--input', required=True, help='Manifest (YAML)')
        parser.add_argument('--model', required=True, help='Entropy model file')
        parser.add_argument('--lambda', dest='lambdas', help='Comma-separated lambdas, e.g. "2,1,0.5"')
        parser.add_argument('--k-ms', type=float, help='Weight of the MS-SSIM loss')
        parser.add_argument('--k-di', type=float, help='Weight of DISTS')
        parser.add_argument('--allow-scale-reduction', action='store_true',
                            help='Use fewer MS-SSIM scales for small images instead of failing')
        parser.add_argument('--output', required=True, help='CSV output path')

    def run(self, args: argparse.Namespace) -> Dict[str, Any]:
        if args.lambdas:
            self.config.set('rdo.lambdas', list(lambda_list(args.lambdas)))
        if args.k_ms is not None:
            self.config.set('rdo.k_ms', args.k_ms)
        if args.k_di is not None:
            self.config.set('rdo.k_di', args.k_di)
        if args.allow_scale_reduction:
            self.config.set('metrics.ms_ssim.allow_scale_reduction', True)
        rdo_config = RdoConfig.from_config(self.config)

        entries = load_manifest(args.input)
        model = self.load_model(args.model)
        report = rd_sweep(entries, model, config=rdo_config,
                          ms_settings=MsSsimSettings.from_config(self.config),
                          dists_settings=DistsSettings.from_config(self.config))
        report.write_csv(args.output)

        summary = {**report.summary(), "output": args.output}
        summary["lambdas"] = ",".join(f"{v:g}" for v in rdo_config.lambdas)
        if report.rows and report.failed_rows == len(report.rows):
            diagnostics = sorted({f"error[sweep]: {row.input_id}: {row.status}" for row in report.rows})
            return self.result(summary, status="failed", diagnostics=diagnostics,
                               exit_code=EXIT_FAILURE)
        return self.result(summary)
