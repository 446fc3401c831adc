"""
Logging setup driven by the ``logging`` section of the configuration.
"""

import logging
import os
from typing import Any, Dict

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def setup_logging(config: Dict[str, Any] = None, verbose: bool = False) -> logging.Logger:
    """
    Configure the root logger once for a command run.

    Args:
        config: The ``logging`` configuration section
        verbose: Force DEBUG level regardless of the configured level

    Returns:
        The configured root logger
    """
    config = config or {}
    level_name = "DEBUG" if verbose else str(config.get('level', 'WARNING')).upper()
    level = getattr(logging, level_name, logging.WARNING)

    root = logging.getLogger()
    root.setLevel(level)
    for handler in list(root.handlers):
        if getattr(handler, '_gllmm_codec', False):
            root.removeHandler(handler)

    # stderr only: stdout carries command summaries
    stream_handler = logging.StreamHandler()
    stream_handler.setFormatter(logging.Formatter(LOG_FORMAT))
    stream_handler._gllmm_codec = True
    root.addHandler(stream_handler)

    if config.get('log_to_file'):
        log_file = config.get('log_file', 'logs/gllmm_codec.log')
        log_dir = os.path.dirname(log_file)
        if log_dir:
            os.makedirs(log_dir, exist_ok=True)
        file_handler = logging.FileHandler(log_file, encoding='utf-8')
        file_handler.setFormatter(logging.Formatter(LOG_FORMAT))
        file_handler._gllmm_codec = True
        root.addHandler(file_handler)

    return root
