"""
Decompressor Command Module

Recovers the latent tensors of a GLC1 container.
"""

import argparse
from typing import Any, Dict

from coding.bitstream import Bitstream
from coding.codec import decode, decode_hyper
from coding.latent import save_latent
from rdo.measure import coding_tables, hyper_coding_tables
from utils.errors import CorruptionError, ModelMismatchError
from .base_command import BaseCommand


class DecompressCommand(BaseCommand):
    """Decodes y_hat (and z_hat when present) with tables rebuilt from the model."""

    name = "decompress"
    help = "decode a GLC1 container back into latent files"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser):
        parser.add_argument('--input', required=True, help='Container path')
        parser.add_argument('--model', required=True, help='Entropy model used by the encoder')
        parser.add_argument('--output', required=True, help='Latent output path (GLTN)')
        parser.add_argument('--hyper-output', help='Hyper-latent output path (GLTN)')
        parser.add_argument('--precision', type=int,
                            help='CDF table precision in bits; must match the encoder')

    def run(self, args: argparse.Namespace) -> Dict[str, Any]:
        if args.precision is not None:
            self.config.set('coding.precision_bits', args.precision)
        with open(args.input, 'rb') as f:
            stream = Bitstream.from_bytes(f.read())
        model = self.load_model(args.model)
        if stream.model_id != model.model_id:
            raise ModelMismatchError(
                f"container was written with model {stream.model_id.hex()}, "
                f"{args.model} is {model.model_id.hex()}"
            )
        if stream.alphabet != model.y_alphabet:
            raise CorruptionError("container alphabet differs from the model's latent alphabet")

        precision = int(self.config.get('coding.precision_bits', 16))
        floor = float(self.config.get('entropy.probability_floor', 2.0 ** -16))

        hyper = None
        if stream.has_hyper:
            z_shape = model.z_shape(stream.shape, int(self.config.get('coding.hyper_downsampling', 4)))
            hyper = decode_hyper(stream, hyper_coding_tables(model, z_shape, precision, floor),
                                 z_shape, model.z_alphabet)
        latent = decode(stream, coding_tables(model, stream.shape, precision, floor))

        save_latent(latent, args.output)
        summary = {
            "symbols": latent.size,
            "shape": "x".join(str(s) for s in latent.shape),
            "output": args.output,
        }
        if hyper is not None:
            summary["hyper_symbols"] = hyper.size
            if args.hyper_output:
                save_latent(hyper, args.hyper_output)
                summary["hyper_output"] = args.hyper_output
        return self.result(summary)
