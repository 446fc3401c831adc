"""
Configuration management utilities for the GLLMM codec toolkit.
"""

import copy
import os
import json
import yaml
from typing import Dict, Any

_MISSING = object()


class Config:
    """
    Layered settings for the codec, metrics and RDO commands.

    Built-in defaults sit underneath whatever a YAML or JSON file provides,
    so a file only needs the keys it changes. Keys are addressed with dots,
    e.g. ``config.get('metrics.ms_ssim.scales')``.
    """

    def __init__(self, config_path: str = None):
        """
        Initialize configuration manager.

        Args:
            config_path: Path to configuration file (JSON or YAML); defaults
                only when omitted or absent
        """
        self.config_path = config_path
        self.config_data = self.get_default_config()
        if config_path and os.path.exists(config_path):
            self.load_config(config_path)

    def load_config(self, config_path: str):
        """Load a file and overlay it on the defaults."""
        with open(config_path, 'r', encoding='utf-8') as f:
            if config_path.endswith('.json'):
                loaded = json.load(f)
            elif config_path.endswith(('.yml', '.yaml')):
                loaded = yaml.safe_load(f)
            else:
                raise ValueError(f"Unsupported config format: {config_path}")
        if loaded is not None and not isinstance(loaded, dict):
            raise ValueError(f"{config_path} must hold a mapping of sections")
        self.config_data = _merge(self.get_default_config(), loaded or {})
        self.config_path = config_path

    def save_config(self, output_path: str):
        """Write the effective configuration as JSON or YAML."""
        if output_path.endswith('.json'):
            text = json.dumps(self.config_data, indent=2)
        elif output_path.endswith(('.yml', '.yaml')):
            text = yaml.safe_dump(self.config_data, default_flow_style=False, sort_keys=False)
        else:
            raise ValueError(f"Unsupported config format: {output_path}")
        with open(output_path, 'w', encoding='utf-8') as f:
            f.write(text)

    def get(self, key: str, default: Any = None) -> Any:
        """Value at a dotted key, or ``default`` when any part is missing or null."""
        node = self.config_data
        for part in key.split('.'):
            node = node.get(part, _MISSING) if isinstance(node, dict) else _MISSING
            if node is _MISSING or node is None:
                return default
        return node

    def set(self, key: str, value: Any):
        """Assign a dotted key, creating intermediate sections."""
        *sections, leaf = key.split('.')
        node = self.config_data
        for part in sections:
            node = node.setdefault(part, {})
        node[leaf] = value

    def section(self, name: str) -> Dict[str, Any]:
        """A top-level section as a dictionary (empty when absent)."""
        return dict(self.get(name, {}))

    @staticmethod
    def get_default_config() -> Dict[str, Any]:
        """Get default configuration."""
        return {
            "entropy": {
                "counts": [3, 3, 3],
                "probability_floor": 2.0 ** -16,
                "min_scale": 1.0e-6,
                "hyper_layers": 4,
                "hyper_width": 3,
                "y_alphabet": [-128, 127],
                "z_alphabet": [-64, 63],
                "z_channels": 4
            },
            "coding": {
                "precision_bits": 16,
                "downsampling_factor": 16,
                "hyper_downsampling": 4
            },
            "metrics": {
                "ms_ssim": {
                    "scales": 5,
                    "weights": [0.0448, 0.2856, 0.3001, 0.2363, 0.1333],
                    "window_size": 11,
                    "sigma": 1.5,
                    "k1": 0.01,
                    "k2": 0.03,
                    "dynamic_range": 255,
                    "allow_scale_reduction": False
                },
                "dists": {
                    "c1": 1.0e-6,
                    "c2": 1.0e-6
                }
            },
            "rdo": {
                "lambdas": [2.0, 1.0, 0.5],
                "k_ms": 765 * 2.0 ** -5,
                "k_di": 1.0,
                "tiers": {"low": 0.23, "mid": 0.33, "high": 0.48}
            },
            "logging": {
                "level": "WARNING",
                "log_to_file": False,
                "log_file": "logs/gllmm_codec.log"
            }
        }


def _merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    """Recursively overlay ``override`` on ``base``."""
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged
