"""Suite configuration: defaults, JSON loading, validation."""

from __future__ import annotations

import json
from pathlib import Path

from .errors import ConfigError

SUITE_NAMES = (
    "functor_laws",
    "isotony",
    "covariance",
    "causality",
    "time_slice",
    "naturality",
    "smatrix",
    "modular",
)

#: Named tolerances; a config may override any subset.  Entries ending in
#: "_coeff" scale as coeff * h^2 at the suite's spacing.
DEFAULT_TOLERANCES = {
    "functor_id": 0.0,
    "functor_translation_chain": 0.0,
    "functor_one_boost_chain": 1e-6,
    "covariance_translation": 1e-12,
    "covariance_boost_coeff": 2.0,
    "causality": 1e-10,
    "time_slice_coeff": 1.0,
    "time_slice_floor": 1e-10,
    "naturality_translation": 1e-9,
    "naturality_boost_coeff": 2.0,
    "smatrix_zero": 0.0,
    "smatrix_unitarity": 1e-15,
    "smatrix_factorization": 1e-9,
    "smatrix_relative": 1e-9,
    "smatrix_vacuum": 1e-12,
    "modular_identities": 1e-12,
    "modular_kms": 1e-11,
    "modular_spectrum": 1e-12,
    "order_ratio_lo": 3.0,
    "order_ratio_hi": 5.0,
}

DEFAULT_CONFIG = {
    "seed": 20260809,
    "output_dir": "reports",
    "suites": list(SUITE_NAMES),
    "samples": None,
    "tolerances": {},
    "convergence": {
        "h_values": [1.0 / 16, 1.0 / 32, 1.0 / 64],
        "masses": [0.0, 1.0],
    },
    "smatrix_sweep": {"separations": [0.5, 0.75, 1.0, 1.25]},
    "propagator": {
        "mass": 1.0,
        "h": 1.0 / 32,
        "center": [-0.5, 0.0],
        "radii": [0.4, 0.5],
        "amplitude": 1.0,
    },
    "modular_cli": {"n": 3, "rho": None, "seed": 7, "samples": 25},
}


def load_config(path: str | Path) -> dict:
    """Read and validate a config file, merged over the defaults."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(
            f"config parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(doc, dict):
        raise ConfigError("config root must be a JSON object")
    return merge_config(doc)


def merge_config(doc: dict) -> dict:
    cfg = json.loads(json.dumps(DEFAULT_CONFIG))  # deep copy
    for key, value in doc.items():
        if key not in DEFAULT_CONFIG:
            raise ConfigError(f"unknown config field '{key}'")
        if key == "tolerances":
            if not isinstance(value, dict):
                raise ConfigError("tolerances: must be an object")
            for name, tol in value.items():
                if name not in DEFAULT_TOLERANCES:
                    raise ConfigError(f"tolerances.{name}: unknown tolerance name")
                if not isinstance(tol, (int, float)):
                    raise ConfigError(f"tolerances.{name}: must be a number")
            cfg["tolerances"] = dict(value)
        elif isinstance(DEFAULT_CONFIG[key], dict):
            if not isinstance(value, dict):
                raise ConfigError(f"{key}: must be an object")
            cfg[key].update(value)
        else:
            cfg[key] = value
    _validate(cfg)
    return cfg


def _validate(cfg: dict) -> None:
    if not isinstance(cfg["seed"], int):
        raise ConfigError("seed: must be an integer")
    if not isinstance(cfg["suites"], list):
        raise ConfigError("suites: must be a list of suite names")
    for i, name in enumerate(cfg["suites"]):
        if name not in SUITE_NAMES:
            raise ConfigError(f"suites[{i}]: unknown suite '{name}'")
    if cfg["samples"] is not None and (
        not isinstance(cfg["samples"], int) or cfg["samples"] < 1
    ):
        raise ConfigError("samples: must be a positive integer or null")
    hs = cfg["convergence"]["h_values"]
    if not isinstance(hs, list) or len(hs) < 2:
        raise ConfigError("convergence.h_values: need at least two spacings")


def tolerance(cfg: dict, name: str) -> float:
    return float(cfg.get("tolerances", {}).get(name, DEFAULT_TOLERANCES[name]))
