"""
Error types shared by the codec packages.

Every error carries a short ``kind`` tag. The command layer turns the tag
into a one-line diagnostic and an exit code.
"""


class CodecError(Exception):
    """Base class for all codec errors."""

    kind = "error"


class ParameterDomainError(CodecError, ValueError):
    """Distribution or model parameters outside their valid domain."""

    kind = "validation"


class OutOfAlphabetError(CodecError, ValueError):
    """A symbol lies outside the alphabet it is coded with."""

    kind = "alphabet"


class CapacityError(CodecError):
    """An alphabet does not fit into the frequency precision."""

    kind = "capacity"


class CodingError(CodecError):
    """Tables and symbols disagree while coding."""

    kind = "coding"


class ModelMismatchError(CodingError):
    """A container was written with a different entropy model."""

    kind = "model-mismatch"


class CorruptionError(CodecError):
    """A stream or file failed an integrity check."""

    kind = "corruption"


class InputError(CodecError, ValueError):
    """Malformed, non-finite or mis-shaped input data."""

    kind = "input"


EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_IO = 2

EXIT_CODES = {
    "validation": 3,
    "capacity": 4,
    "corruption": 5,
    "input": 6,
    "alphabet": 6,
    "coding": 7,
    "model-mismatch": 7,
}


def error_kind(error: BaseException) -> str:
    """Diagnostic tag of any exception a command may raise."""
    if isinstance(error, CodecError):
        return error.kind
    if isinstance(error, OSError):
        return "io"
    return "error"


def exit_code_for(error: BaseException) -> int:
    kind = error_kind(error)
    if kind == "io":
        return EXIT_IO
    return EXIT_CODES.get(kind, EXIT_FAILURE)
