"""
Base Command Module

Common plumbing for every subcommand: configuration access, model loading
and the result dictionary handed back to ``main``.
"""

import argparse
import logging
from typing import Any, Dict, List, Optional

from entropy.model import EntropyModel
from entropy.model_file import load_model
from entropy.validation import MIN_SCALE
from utils.config import Config


class BaseCommand:
    """
    Base class for subcommands.

    Subclasses set ``name`` and ``help``, declare their flags in
    ``add_arguments`` and do their work in ``run``.
    """

    name = "command"
    help = ""

    def __init__(self, config: Config = None):
        """
        Initialize the command.

        Args:
            config: Loaded configuration; defaults when omitted
        """
        self.config = config or Config()
        self.logger = logging.getLogger(f"commands.{self.name}")

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser):
        """Declare the subcommand's flags."""

    def run(self, args: argparse.Namespace) -> Dict[str, Any]:
        """
        Execute the command.

        Args:
            args: Parsed command line

        Returns:
            Dictionary with "status", ordered "summary" key/value pairs and,
            when relevant, "diagnostics" lines for the error channel
        """
        raise NotImplementedError("Subclasses must implement the run method")

    def load_model(self, path: str, validate: bool = True) -> EntropyModel:
        """Read a model file, rejecting invalid parameters unless told otherwise."""
        model = load_model(path)
        if validate:
            min_scale = float(self.config.get('entropy.min_scale', MIN_SCALE))
            model.validate(min_scale).raise_if_invalid("entropy model")
        self.logger.debug("loaded model %s (id %s)", path, model.model_id.hex())
        return model

    def result(self, summary: Dict[str, Any], status: str = "completed",
               diagnostics: Optional[List[str]] = None, exit_code: int = 0) -> Dict[str, Any]:
        return {
            "status": status,
            "command": self.name,
            "summary": summary,
            "diagnostics": diagnostics or [],
            "exit_code": exit_code,
        }

