"""
Main entry point for the GLLMM codec toolkit.

Subcommands compress and decompress latent tensors, score image pairs,
run rate-distortion sweeps and generate or validate entropy models.
Summaries go to stdout as key=value lines; diagnostics go to stderr.
"""

import argparse
import logging
import os
import sys

import yaml

# Add src to path for imports
sys.path.insert(0, os.path.join(os.path.dirname(os.path.abspath(__file__)), 'src'))

from commands import COMMANDS
from utils.config import Config
from utils.errors import EXIT_OK, error_kind, exit_code_for
from utils.logging_utils import setup_logging

DEFAULT_CONFIG = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'config', 'config.yaml')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description='Entropy coding, perceptual metrics and RD evaluation for GLLMM latents'
    )
    parser.add_argument(
        '--config',
        type=str,
        help='Path to configuration file (YAML or JSON)',
        default=None
    )
    parser.add_argument(
        '--verbose',
        action='store_true',
        help='Enable debug logging'
    )
    subparsers = parser.add_subparsers(dest='command', required=True)
    for command in COMMANDS:
        subparser = subparsers.add_parser(command.name, help=command.help)
        command.add_arguments(subparser)
        subparser.set_defaults(command_class=command)
    return parser


def format_value(value) -> str:
    if isinstance(value, float):
        return f"{value:.9g}"
    return str(value)


def main(argv=None) -> int:
    """Main entry point for the application."""
    args = build_parser().parse_args(argv)

    # Load configuration
    if args.config is not None and not os.path.exists(args.config):
        print(f"error[io]: configuration file not found: {args.config}", file=sys.stderr)
        return exit_code_for(FileNotFoundError())
    try:
        config = Config(args.config or DEFAULT_CONFIG)
    except (ValueError, yaml.YAMLError) as e:
        print(f"error[config]: {e}", file=sys.stderr)
        return exit_code_for(e)

    setup_logging(config.section('logging'), verbose=args.verbose)
    command = args.command_class(config)

    try:
        result = command.run(args)
    except Exception as e:
        print(f"error[{error_kind(e)}]: {e}", file=sys.stderr)
        if args.verbose:
            logging.getLogger(__name__).exception("%s failed", args.command)
        return exit_code_for(e)

    for key, value in result['summary'].items():
        print(f"{key}={format_value(value)}")
    for line in result.get('diagnostics', []):
        print(line, file=sys.stderr)
    return result.get('exit_code', EXIT_OK)


if __name__ == '__main__':
    sys.exit(main())
