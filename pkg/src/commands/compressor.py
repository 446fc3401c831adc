"""
Compressor Command Module

Encodes a latent tensor (read from a GLTN file or sampled from the model)
into a GLC1 container.
"""

import argparse
import os
from typing import Any, Dict

from coding.latent import load_latent
from rdo.manifest import parse_shape
from rdo.measure import measure_stream
from rdo.objective import as_alphabet, bpp, bpp_tier
from rdo.synthetic import synth_latents
from utils.errors import CodingError, InputError
from .base_command import BaseCommand


class CompressCommand(BaseCommand):
    """Entropy-codes y_hat (and optionally z_hat) with tables from the model."""

    name = "compress"
    help = "encode a latent tensor into a GLC1 container"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser):
        parser.add_argument('--model', required=True, help='Entropy model file (GLMP or YAML dump)')
        source = parser.add_mutually_exclusive_group(required=True)
        source.add_argument('--input', help='Latent file (GLTN)')
        source.add_argument('--synthetic', metavar='CxHxW',
                            help='Sample a latent of this shape from the model')
        parser.add_argument('--seed', type=int, default=0, help='Seed for --synthetic')
        parser.add_argument('--hyper-input', help='Hyper-latent file (GLTN) to code first')
        parser.add_argument('--output', required=True, help='Container output path')
        parser.add_argument('--precision', type=int, help='CDF table precision in bits (8..16)')

    def run(self, args: argparse.Namespace) -> Dict[str, Any]:
        if args.precision is not None:
            self.config.set('coding.precision_bits', args.precision)
        precision = int(self.config.get('coding.precision_bits', 16))
        model = self.load_model(args.model)

        if args.synthetic:
            latent = synth_latents(model, parse_shape(args.synthetic), args.seed)
        else:
            latent = as_alphabet(load_latent(args.input), model.y_alphabet)

        hyper = None
        if args.hyper_input:
            hyper = as_alphabet(load_latent(args.hyper_input), model.z_alphabet)
            expected = model.z_shape(latent.shape, int(self.config.get('coding.hyper_downsampling', 4)))
            if hyper.shape != expected:
                raise InputError(f"hyper-latent shape {hyper.shape} differs from expected {expected}")

        measurement = measure_stream(latent, model, precision, hyper,
                                     float(self.config.get('entropy.probability_floor', 2.0 ** -16)))
        if not measurement.round_trip:
            raise CodingError("container did not decode back to the input latent")

        data = measurement.stream.to_bytes()
        directory = os.path.dirname(args.output)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(args.output, 'wb') as f:
            f.write(data)

        factor = int(self.config.get('coding.downsampling_factor', 16))
        _, height, width = latent.shape
        actual_bits = 8 * len(data)
        value = bpp(actual_bits, width * factor, height * factor)
        self.logger.info("wrote %s (%d bytes)", args.output, len(data))
        return self.result({
            "symbols": latent.size + (hyper.size if hyper is not None else 0),
            "estimated_bits": measurement.estimated_bits,
            "payload_bits": measurement.payload_bits,
            "actual_bits": actual_bits,
            "bpp": value,
            "tier": bpp_tier(value, self.config.get('rdo.tiers')),
            "output": args.output,
        })
