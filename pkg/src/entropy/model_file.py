"""
Model parameter file ("GLMP") and its YAML text dump.

Binary layout, little-endian:

    magic "GLMP" | version u16 | layout u16 | channels u16 | set count u32
    entry height u32 | entry width u32        (zero for per-channel models)
    y alphabet min/max i16 i16 | z alphabet min/max i16 i16
    per set: K, M, N u16, then f64 family weights (3) and the Gaussian,
             Laplace and Logistic (weight, mean, spread) triples
    z channels u16 | layers u16 | width u16
    per z channel, per layer: f64 H[width], b[width], a[width]
"""

import logging
import os
from typing import Union

import numpy as np
import yaml

from utils.binary import ByteReader, pack, pack_array
from utils.errors import CorruptionError, InputError
from .alphabet import SymbolAlphabet
from .factorized import FactorizedDensityParams
from .gllmm import GllmmParams
from .model import EntropyModel
from .symbol_map import PER_CHANNEL, PER_ENTRY

logger = logging.getLogger(__name__)

MAGIC = b"GLMP"
VERSION = 1
_LAYOUT_CODES = {PER_CHANNEL: 0, PER_ENTRY: 1}
_LAYOUT_NAMES = {code: name for name, code in _LAYOUT_CODES.items()}


def serialize_model(model: EntropyModel) -> bytes:
    """Encode a model to its binary form."""
    height, width = (model.entry_shape[1], model.entry_shape[2]) if model.entry_shape else (0, 0)
    parts = [
        MAGIC,
        pack("HHHI", VERSION, _LAYOUT_CODES[model.layout], model.channels, len(model.gllmm_sets)),
        pack("II", height, width),
        pack("hhhh", model.y_alphabet.min_symbol, model.y_alphabet.max_symbol,
             model.z_alphabet.min_symbol, model.z_alphabet.max_symbol),
    ]
    for params in model.gllmm_sets:
        parts.append(pack("HHH", *params.counts))
        parts.append(pack_array(params.family_weights, 'f8'))
        for _, _, components in params.families():
            parts.append(pack_array(components, 'f8'))

    hyper = model.hyperprior
    parts.append(pack("HHH", hyper.channels, hyper.layers, hyper.width))
    # per channel, per layer: H, b, a
    blocks = np.stack([hyper.weights, hyper.biases, hyper.gates], axis=2)
    parts.append(pack_array(blocks, 'f8'))
    return b"".join(parts)


def parse_model(data: bytes) -> EntropyModel:
    """Decode the binary form; structural damage raises ``CorruptionError``."""
    reader = ByteReader(data, "model file")
    reader.expect_magic(MAGIC)
    version, layout_code, channels, set_count = reader.unpack("HHHI")
    if version != VERSION:
        raise CorruptionError(f"model file: unsupported version {version}")
    if layout_code not in _LAYOUT_NAMES:
        raise CorruptionError(f"model file: unknown layout code {layout_code}")
    height, width = reader.unpack("II")
    y_min, y_max, z_min, z_max = reader.unpack("hhhh")

    sets = []
    for _ in range(set_count):
        k, m, n = reader.unpack("HHH")
        family_weights = reader.array('f8', 3)
        blocks = [reader.array('f8', 3 * count).reshape(count, 3) for count in (k, m, n)]
        sets.append(GllmmParams(family_weights, *blocks))

    z_channels, layers, lanes = reader.unpack("HHH")
    blocks = reader.array('f8', z_channels * layers * 3 * lanes).reshape(z_channels, layers, 3, lanes)
    reader.expect_end()

    layout = _LAYOUT_NAMES[layout_code]
    return EntropyModel(
        gllmm_sets=tuple(sets),
        layout=layout,
        channels=channels,
        y_alphabet=SymbolAlphabet(y_min, y_max),
        z_alphabet=SymbolAlphabet(z_min, z_max),
        hyperprior=FactorizedDensityParams(blocks[:, :, 0], blocks[:, :, 1], blocks[:, :, 2]),
        entry_shape=(channels, height, width) if layout == PER_ENTRY else None,
    )


def dump_model_text(model: EntropyModel) -> str:
    """YAML rendering of the same content as the binary file."""
    document = {
        "format": "GLMP",
        "version": VERSION,
        "layout": model.layout,
        "channels": model.channels,
        "entry_shape": list(model.entry_shape) if model.entry_shape else None,
        "y_alphabet": model.y_alphabet.to_list(),
        "z_alphabet": model.z_alphabet.to_list(),
        "gllmm_sets": [params.to_dict() for params in model.gllmm_sets],
        "hyperprior": model.hyperprior.to_dict(),
    }
    return yaml.safe_dump(document, default_flow_style=None, sort_keys=False)


def load_model_text(text: str) -> EntropyModel:
    try:
        document = yaml.safe_load(text)
        return EntropyModel(
            gllmm_sets=tuple(GllmmParams.from_dict(d) for d in document["gllmm_sets"]),
            layout=document["layout"],
            channels=int(document["channels"]),
            y_alphabet=SymbolAlphabet(*document["y_alphabet"]),
            z_alphabet=SymbolAlphabet(*document["z_alphabet"]),
            hyperprior=FactorizedDensityParams.from_dict(document["hyperprior"]),
            entry_shape=tuple(document["entry_shape"]) if document.get("entry_shape") else None,
        )
    except (yaml.YAMLError, KeyError, TypeError, AttributeError) as e:
        raise InputError(f"malformed model text dump: {e}") from e


def save_model(model: EntropyModel, path: str, text: bool = False) -> str:
    """
    Write a model file.

    Args:
        model: Model to write
        path: Output path
        text: Write the YAML dump instead of the binary form

    Returns:
        The path written
    """
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    if text:
        with open(path, 'w', encoding='utf-8') as f:
            f.write(dump_model_text(model))
    else:
        with open(path, 'wb') as f:
            f.write(serialize_model(model))
    logger.debug("wrote model %s (%s, %d sets)", path, model.layout, len(model.gllmm_sets))
    return path


def load_model(path: Union[str, os.PathLike]) -> EntropyModel:
    """Read a binary model file, or its YAML dump when the magic is absent."""
    with open(path, 'rb') as f:
        data = f.read()
    if data[:4] == MAGIC:
        return parse_model(data)
    try:
        text = data.decode('utf-8')
    except UnicodeDecodeError:
        raise CorruptionError(f"model file {path}: bad magic {data[:4]!r}")
    return load_model_text(text)
