"""
Validator Command Module

Reports every violated invariant of a model file.
"""

import argparse
from typing import Any, Dict

from utils.errors import EXIT_CODES
from .base_command import BaseCommand


class ValidateCommand(BaseCommand):
    """Runs parameter validation without stopping at the first violation."""

    name = "validate"
    help = "check every parameter invariant of a model file"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser):
        parser.add_argument('--model', required=True, help='Model file (GLMP or YAML dump)')

    def run(self, args: argparse.Namespace) -> Dict[str, Any]:
        model = self.load_model(args.model, validate=False)
        report = model.validate(float(self.config.get('entropy.min_scale', 1e-6)))
        summary = {
            "model_id": model.model_id.hex(),
            "valid": str(report.valid).lower(),
            "violations": len(report.violations),
        }
        if report.valid:
            return self.result(summary)
        diagnostics = [f"error[validation]: {error}" for error in report.errors]
        return self.result(summary, status="failed", diagnostics=diagnostics,
                           exit_code=EXIT_CODES["validation"])
