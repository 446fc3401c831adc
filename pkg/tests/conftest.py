"""
Shared fixtures for the codec test suite.
"""

import os
import sys

import numpy as np
import pytest

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, os.path.join(ROOT, 'src'))
sys.path.insert(0, ROOT)

from entropy.alphabet import SymbolAlphabet  # noqa: E402
from entropy.model_file import save_model  # noqa: E402
from rdo.synthetic import generate_model  # noqa: E402


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


@pytest.fixture
def small_model():
    """Per-channel model with 8 channels and the default alphabets."""
    return generate_model(channels=8, seed=3)


@pytest.fixture
def model_path(tmp_path, small_model):
    return save_model(small_model, str(tmp_path / "model.glmp"))


@pytest.fixture
def byte_alphabet():
    return SymbolAlphabet(-128, 127)
