"""Spectral experiments for the diffusively scaled Jin-Xin relaxation system."""

import json

from ._core import (
    ConfigError,
    RangeError,
    decay_rate_omega,
    eigenvalues,
    exact_linear_propagator,
    fit_rate,
    linear_symbol,
    overdamping_curve,
    preset_names,
    spectral_selftest,
    threshold_J,
)
from . import _core

__all__ = [
    "ConfigError",
    "RangeError",
    "config_hash",
    "decay_rate_omega",
    "eigenvalues",
    "exact_linear_propagator",
    "fit_rate",
    "linear_symbol",
    "normalize_config",
    "overdamping_curve",
    "preset",
    "preset_names",
    "run",
    "spectral_selftest",
    "threshold_J",
]


def preset(name):
    """Raw preset configuration as a dict."""
    return json.loads(_core.preset_json(name))


def normalize_config(config):
    """Validated config with every default filled in."""
    return json.loads(_core.normalize_config_json(json.dumps(config)))


def config_hash(config):
    return _core.config_hash(json.dumps(config))


def run(config, write=False):
    """Runs an experiment; returns fits (dict), norms (CSV text), table (CSV text) and the run directory."""
    out = _core.run_json(json.dumps(config), write)
    out["fits"] = json.loads(out["fits"])
    return out
