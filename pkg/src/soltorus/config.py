"""Session configuration: JSON schema, defaults and loading."""

from __future__ import annotations

import copy
import json

import jsonschema

_scalar = {"type": ["string", "integer"]}
_vector = {"oneOf": [{"const": "sym"}, {"type": "array", "items": _scalar}]}
_lattice_matrix = {"type": "array", "items": {"type": "array", "items": _scalar}}

W_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["type"],
    "properties": {
        "type": {"enum": ["regular", "trivial", "custom"]},
        "degree": {"type": "array", "items": {"type": "integer"}},
        "degrees": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
        "actions": {"type": "object", "additionalProperties": _lattice_matrix},
    },
}

CONFIG_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "soltorus session config",
    "type": "object",
    "additionalProperties": False,
    "required": ["presentation"],
    "properties": {
        "presentation": {
            "type": "object",
            "additionalProperties": False,
            "required": ["d", "z", "orders"],
            "properties": {
                "d": {"type": "integer", "minimum": 1},
                "z": {"type": "integer", "minimum": 0},
                "orders": {"type": "array", "items": {"type": "integer", "minimum": 1}},
            },
        },
        "module": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "alpha": _vector,
                "beta": _scalar,
                "W": W_SCHEMA,
                "B": {"type": "integer", "minimum": 1},
                "margin": {"type": "integer", "minimum": 1},
                "expect_verdict": {"enum": ["reducible", "window_irreducible"]},
            },
        },
        "virp": {
            "type": "object",
            "additionalProperties": False,
            "required": ["p", "F"],
            "properties": {
                "p": {"type": "integer", "minimum": 2},
                "a": _scalar,
                "b": _scalar,
                "F": _lattice_matrix,
                "B": {"type": "integer", "minimum": 1},
            },
        },
        "algebra": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "B": {"type": "integer", "minimum": 1},
                "D_max": {"type": "integer", "minimum": 1},
                "vir_p": {"type": "array", "items": {"type": "integer", "minimum": 2}},
                "vir_window": {"type": "integer", "minimum": 1},
            },
        },
        "correspond": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "B": {"type": "integer", "minimum": 2},
                "D_cap": {"type": "integer", "minimum": 0},
            },
        },
        "cover": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "sizes": {"type": "array", "items": {"type": "integer", "minimum": 2}, "minItems": 1},
                "check_sizes": {"type": "array", "items": {"type": "integer", "minimum": 2}},
                "margin": {"type": "integer", "minimum": 1},
            },
        },
        "sampling": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "threshold": {"type": "integer", "minimum": 1},
                "sample_count": {"type": "integer", "minimum": 1},
            },
        },
        "seed": {"type": "integer"},
        "suites": {
            "type": "array",
            "items": {"enum": ["algebra", "module", "irreducible", "correspond", "cover"]},
        },
        "output": {"type": "string"},
    },
}

DEFAULTS = {
    "module": {"alpha": "sym", "beta": "sym", "W": {"type": "regular"}, "B": 3, "margin": 1},
    "algebra": {"B": 2, "D_max": 3, "vir_p": [2, 3], "vir_window": 6},
    "correspond": {"B": 3, "D_cap": 4},
    "cover": {"sizes": [2, 3, 4], "check_sizes": [2], "margin": 1},
    "sampling": {"threshold": 50000, "sample_count": 2000},
    "seed": 0,
    "suites": ["algebra", "module", "irreducible", "correspond", "cover"],
}

DEFAULT_CONFIG = {
    "presentation": {"d": 2, "z": 1, "orders": [2]},
    "virp": {"p": 2, "a": "sym", "b": "sym", "F": [[1, 1]], "B": 3},
}


class ConfigError(ValueError):
    def __init__(self, pointer: str, message: str):
        super().__init__(f"{pointer}: {message}")
        self.pointer = pointer
        self.message = message


def _pointer(path) -> str:
    return "/" + "/".join(str(p) for p in path) if path else "/"


def validate(raw: dict) -> None:
    validator = jsonschema.Draft202012Validator(CONFIG_SCHEMA)
    errors = sorted(validator.iter_errors(raw), key=lambda e: (list(e.absolute_path), e.message))
    if errors:
        e = errors[0]
        raise ConfigError(_pointer(e.absolute_path), e.message)


def normalize(raw: dict) -> dict:
    """Validate and fill defaults; the result is echoed in reports."""
    validate(raw)
    cfg = copy.deepcopy(raw)
    for key, default in DEFAULTS.items():
        if isinstance(default, dict):
            merged = copy.deepcopy(default)
            merged.update(cfg.get(key, {}))
            cfg[key] = merged
        else:
            cfg.setdefault(key, copy.deepcopy(default))
    return cfg


def load(path: str | None) -> dict:
    if path is None:
        return normalize(copy.deepcopy(DEFAULT_CONFIG))
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError("/", f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError("/", f"invalid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("/", "config must be a JSON object")
    return normalize(raw)
