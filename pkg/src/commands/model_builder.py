"""
Model Builder Command Module

Writes a random, valid entropy model for experiments and tests.
"""

import argparse
from typing import Any, Dict

from entropy.alphabet import SymbolAlphabet
from entropy.model_file import save_model
from entropy.symbol_map import PER_CHANNEL, PER_ENTRY
from rdo.synthetic import generate_model
from utils.errors import InputError
from .base_command import BaseCommand


def _int_list(text: str, count: int, what: str):
    try:
        values = [int(part) for part in text.replace('x', ',').split(',')]
    except ValueError as e:
        raise InputError(f"invalid {what} {text!r}") from e
    if len(values) != count:
        raise InputError(f"{what} needs {count} values, got {text!r}")
    return values


class GenModelCommand(BaseCommand):
    """Samples GLLMM parameter sets and a factorized hyperprior from a seed."""

    name = "gen-model"
    help = "generate a random valid GLMP model file"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser):
        parser.add_argument('--channels', type=int, default=8, help='Main latent channels')
        parser.add_argument('--z-channels', type=int, help='Hyper-latent channels')
        parser.add_argument('--counts', help='Components per family as K,M,N (default 3,3,3)')
        parser.add_argument('--layout', choices=[PER_CHANNEL, PER_ENTRY], default=PER_CHANNEL,
                            help='One parameter set per channel or per latent entry')
        parser.add_argument('--entry-size', metavar='HxW',
                            help='Latent height and width, required for per_entry')
        parser.add_argument('--seed', type=int, default=0, help='Generator seed')
        parser.add_argument('--output', required=True, help='Model output path')
        parser.add_argument('--text', action='store_true', help='Write the YAML dump instead')

    def run(self, args: argparse.Namespace) -> Dict[str, Any]:
        counts = (_int_list(args.counts, 3, "component counts") if args.counts
                  else list(self.config.get('entropy.counts', [3, 3, 3])))
        entry_size = _int_list(args.entry_size, 2, "entry size") if args.entry_size else None
        z_channels = args.z_channels or int(self.config.get('entropy.z_channels', 4))

        model = generate_model(
            channels=args.channels,
            seed=args.seed,
            counts=counts,
            layout=args.layout,
            z_channels=z_channels,
            entry_size=entry_size,
            y_alphabet=SymbolAlphabet(*self.config.get('entropy.y_alphabet', [-128, 127])),
            z_alphabet=SymbolAlphabet(*self.config.get('entropy.z_alphabet', [-64, 63])),
            layers=int(self.config.get('entropy.hyper_layers', 4)),
            width=int(self.config.get('entropy.hyper_width', 3)),
        )
        report = model.validate(float(self.config.get('entropy.min_scale', 1e-6)))
        report.raise_if_invalid("generated model")
        save_model(model, args.output, text=args.text)

        return self.result({
            "output": args.output,
            "model_id": model.model_id.hex(),
            "layout": model.layout,
            "sets": len(model.gllmm_sets),
            "counts": ",".join(str(c) for c in counts),
            "valid": str(report.valid).lower(),
        })
