"""
Command modules behind the ``main.py`` subcommands.
"""

from .base_command import BaseCommand
from .compressor import CompressCommand
from .decompressor import DecompressCommand
from .evaluator import MetricsCommand
from .model_builder import GenModelCommand
from .reporter import RdReportCommand
from .validator import ValidateCommand

COMMANDS = [
    CompressCommand,
    DecompressCommand,
    MetricsCommand,
    RdReportCommand,
    GenModelCommand,
    ValidateCommand,
]

__all__ = [
    'BaseCommand',
    'CompressCommand',
    'DecompressCommand',
    'MetricsCommand',
    'RdReportCommand',
    'GenModelCommand',
    'ValidateCommand',
    'COMMANDS',
]
