"""
Utility modules for the GLLMM codec toolkit.
"""

from .config import Config
from .errors import (
    CapacityError,
    CodecError,
    CodingError,
    CorruptionError,
    InputError,
    ModelMismatchError,
    OutOfAlphabetError,
    ParameterDomainError,
    error_kind,
    exit_code_for,
)
from .logging_utils import setup_logging

__all__ = [
    'Config',
    'setup_logging',
    'CodecError',
    'ParameterDomainError',
    'OutOfAlphabetError',
    'CapacityError',
    'CodingError',
    'ModelMismatchError',
    'CorruptionError',
    'InputError',
    'error_kind',
    'exit_code_for',
]
