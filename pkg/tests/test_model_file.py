"""
Tests for the GLMP model file, its YAML dump and model generation.
"""

import numpy as np
import pytest

from entropy.model_file import (
    dump_model_text,
    load_model,
    load_model_text,
    parse_model,
    save_model,
    serialize_model,
)
from entropy.symbol_map import PER_ENTRY
from rdo.synthetic import generate_model
from utils.errors import CodingError, CorruptionError, InputError, ParameterDomainError


def assert_same_model(a, b):
    assert a.layout == b.layout
    assert a.channels == b.channels
    assert a.entry_shape == b.entry_shape
    assert a.y_alphabet == b.y_alphabet
    assert a.z_alphabet == b.z_alphabet
    assert [p.to_dict() for p in a.gllmm_sets] == [p.to_dict() for p in b.gllmm_sets]
    assert np.array_equal(a.hyperprior.weights, b.hyperprior.weights)
    assert np.array_equal(a.hyperprior.biases, b.hyperprior.biases)
    assert np.array_equal(a.hyperprior.gates, b.hyperprior.gates)


def test_binary_round_trip(small_model):
    parsed = parse_model(serialize_model(small_model))
    assert_same_model(small_model, parsed)
    assert parsed.model_id == small_model.model_id


def test_text_round_trip(small_model):
    text = dump_model_text(small_model)
    assert text.startswith("format: GLMP")
    parsed = load_model_text(text)
    assert_same_model(small_model, parsed)
    assert parsed.model_id == small_model.model_id


def test_load_detects_format(tmp_path, small_model):
    binary = save_model(small_model, str(tmp_path / "m.glmp"))
    text = save_model(small_model, str(tmp_path / "m.yaml"), text=True)
    assert load_model(binary).model_id == load_model(text).model_id == small_model.model_id


def test_per_entry_round_trip():
    model = generate_model(channels=2, seed=5, layout=PER_ENTRY, entry_size=(3, 4))
    assert len(model.gllmm_sets) == 24
    parsed = parse_model(serialize_model(model))
    assert parsed.entry_shape == (2, 3, 4)
    assert_same_model(model, parsed)


def test_generation_is_deterministic():
    assert serialize_model(generate_model(8, seed=11)) == serialize_model(generate_model(8, seed=11))
    assert generate_model(8, seed=11).model_id != generate_model(8, seed=12).model_id


def test_generated_models_are_valid():
    for seed in range(10):
        model = generate_model(4, seed=seed, counts=(2, 3, 4))
        assert model.validate().valid
        assert model.gllmm_sets[0].counts == (2, 3, 4)


def test_default_counts(small_model):
    assert all(params.counts == (3, 3, 3) for params in small_model.gllmm_sets)


def test_bad_magic(small_model):
    data = b"XXXX" + serialize_model(small_model)[4:]
    with pytest.raises(CorruptionError):
        parse_model(data)


def test_truncated(small_model):
    with pytest.raises(CorruptionError):
        parse_model(serialize_model(small_model)[:-1])


def test_trailing_bytes(small_model):
    with pytest.raises(CorruptionError):
        parse_model(serialize_model(small_model) + b"\x00")


def test_unreadable_binary(tmp_path):
    path = tmp_path / "junk.glmp"
    path.write_bytes(b"\xff\xfe\x00\x01")
    with pytest.raises(CorruptionError):
        load_model(str(path))


def test_malformed_text():
    with pytest.raises(InputError):
        load_model_text("layout: per_channel\n")


def test_per_entry_needs_size():
    with pytest.raises(ParameterDomainError):
        generate_model(2, seed=0, layout=PER_ENTRY)


def test_per_entry_shape_checked():
    model = generate_model(channels=2, seed=5, layout=PER_ENTRY, entry_size=(3, 4))
    model.gllmm_map((2, 3, 4))
    with pytest.raises(CodingError):
        model.gllmm_map((2, 4, 4))


def test_z_shape_rounds_up(small_model):
    assert small_model.z_shape((8, 16, 16)) == (4, 4, 4)
    assert small_model.z_shape((8, 17, 9)) == (4, 5, 3)
