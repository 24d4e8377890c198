"""Versioned JSON schemas for everything the CLI writes."""

from __future__ import annotations

import json

SCHEMA_VERSION = 1

# 256-step ramp from dark blue (μ = 0) through white to dark red (μ = max).
# Channel values are linear in the step index on each half.
COLOR_RAMP = {
    "steps": 256,
    "low": [8, 48, 107],
    "mid": [247, 247, 247],
    "high": [103, 0, 13],
    "mapping": "step = floor(255 * min(mu / mu_max, 1)); low->mid on steps 0..127, mid->high on 128..255",
}

_number_or_null = {"type": ["number", "null"]}

GRID = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$id": "cliffps.scan_grid/1",
    "type": "object",
    "required": ["schema", "region", "epsilon", "which", "columns", "values"],
    "properties": {
        "schema": {"const": "cliffps.scan_grid/1"},
        "region": {
            "type": "object",
            "required": ["lo", "hi", "resolution"],
            "properties": {
                "lo": {"type": "array", "items": {"type": "number"}, "minItems": 1},
                "hi": {"type": "array", "items": {"type": "number"}, "minItems": 1},
                "resolution": {"type": "array", "items": {"type": "integer", "minimum": 2}, "minItems": 1},
            },
        },
        "plane": {
            "type": ["object", "null"],
            "properties": {
                "origin": {"type": "array", "items": {"type": "number"}},
                "basis": {"type": "array", "items": {"type": "array", "items": {"type": "number"}}},
            },
        },
        "epsilon": {"type": "number", "exclusiveMinimum": 0},
        "which": {"type": "array", "items": {"enum": ["C", "Q", "W"]}, "minItems": 1},
        "columns": {"type": "array", "items": {"type": "string"}},
        "values": {"type": "array", "items": _number_or_null},
        "meta": {"type": "object"},
    },
}

CURVE = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$id": "cliffps.curve/1",
    "type": "object",
    "required": ["schema", "b", "experimental", "points"],
    "properties": {
        "schema": {"const": "cliffps.curve/1"},
        "b": {"type": "number", "minimum": 0},
        "experimental": {"type": "boolean"},
        "points": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["x", "z", "e", "f", "accepted", "cause"],
                "properties": {
                    "x": _number_or_null,
                    "z": {"type": "number"},
                    "e": _number_or_null,
                    "f": _number_or_null,
                    "eig_small": _number_or_null,
                    "residual": _number_or_null,
                    "accepted": {"type": "boolean"},
                    "cause": {"type": "string"},
                },
            },
        },
        "f_sign": {
            "type": "object",
            "required": ["x", "z", "sign"],
            "properties": {
                "x": {"type": "array", "items": {"type": "number"}},
                "z": {"type": "array", "items": {"type": "number"}},
                "sign": {"type": "array", "items": {"type": "array", "items": {"enum": [-1, 0, 1]}}},
            },
        },
    },
}

SUITE = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$id": "cliffps.suite/1",
    "type": "object",
    "required": ["schema", "suite", "seed", "passed", "checks"],
    "properties": {
        "schema": {"const": "cliffps.suite/1"},
        "suite": {"type": "string"},
        "seed": {"type": "integer"},
        "passed": {"type": "boolean"},
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "passed", "worst", "tol", "samples"],
                "properties": {
                    "name": {"type": "string"},
                    "passed": {"type": "boolean"},
                    "worst": {"type": "number"},
                    "tol": {"type": "number"},
                    "samples": {"type": "integer"},
                },
            },
        },
    },
}

SCHEMAS = {"grid": GRID, "curve": CURVE, "suite": SUITE}


def bundle() -> dict:
    return {"version": SCHEMA_VERSION, "color_ramp": COLOR_RAMP, "schemas": SCHEMAS}


def dumps() -> str:
    return json.dumps(bundle(), indent=2, sort_keys=True)
