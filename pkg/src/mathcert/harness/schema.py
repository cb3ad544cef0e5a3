"""JSON Schema for problem manifests (schema_version 1)."""

SCHEMA_VERSION = 1

DOMAINS = (
    "analysis",
    "mathematical_physics",
    "geometry",
    "number_theory",
    "combinatorics",
    "coding_theory",
    "algebra",
    "other",
)
OUTPUT_TYPES = ("constant", "function", "construction", "formula")
MODES = ("ground_truth_computable", "benchmark_best_known", "new_construction")

_decimal = {"type": ["string", "number"]}
_reference = {
    "type": "object",
    "properties": {
        "digits": {"type": "string", "pattern": r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$"},
        "verified_digits": {"type": "integer", "minimum": 1},
    },
    "required": ["digits", "verified_digits"],
    "additionalProperties": False,
}

MANIFEST_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "problem manifest",
    "type": "object",
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "id": {"type": "string", "pattern": r"^[a-z0-9][a-z0-9_\-]*$"},
        "title": {"type": "string", "minLength": 1},
        "domain": {"enum": list(DOMAINS)},
        "output_type": {"enum": list(OUTPUT_TYPES)},
        "mode": {"enum": list(MODES)},
        "solvability": {"type": "integer", "minimum": 0, "maximum": 3},
        "statement": {"type": "string"},
        "output_format": {"type": "string"},
        "ground_truth": {
            "type": "object",
            "properties": {
                "kind": {"enum": ["constant", "function-grid"]},
                "reference": _reference,
                "variables": {"type": "array", "items": {"type": "string"}, "minItems": 1},
                "points": {
                    "type": "array",
                    "minItems": 1,
                    "items": {
                        "type": "object",
                        "properties": {
                            "bindings": {"type": "object", "additionalProperties": {"type": "string"}},
                            "reference": _reference,
                        },
                        "required": ["bindings", "reference"],
                        "additionalProperties": False,
                    },
                },
                "absolute": {"type": "boolean"},
            },
            "required": ["kind"],
            "additionalProperties": False,
            "if": {"properties": {"kind": {"const": "constant"}}},
            "then": {"required": ["reference"], "not": {"anyOf": [{"required": ["points"]},
                                                                   {"required": ["variables"]}]}},
            "else": {"required": ["points", "variables"], "not": {"required": ["reference"]}},
        },
        "baseline": {
            "type": "object",
            "properties": {
                "value": _decimal,
                "direction": {"enum": ["minimize", "maximize"]},
                "metric": {"type": "string"},
                "source": {"type": "string"},
            },
            "required": ["value", "direction"],
            "additionalProperties": False,
        },
        "validator": {
            "type": "object",
            "properties": {"id": {"type": "string"}, "params": {"type": "object"}},
            "required": ["id"],
            "additionalProperties": False,
        },
        "admissibility": {
            "type": "object",
            "properties": {
                "max_literal_digits": {"type": "integer", "minimum": 1},
                "max_exponent": {"type": "integer", "minimum": 1},
                "function_tier": {"enum": ["core", "extension"]},
                "allowed_functions": {"type": "array", "items": {"type": "string"}},
            },
            "additionalProperties": False,
        },
        "source": {
            "type": "object",
            "properties": {"reference": {"type": "string"}, "notes": {"type": "string"}},
            "additionalProperties": False,
        },
    },
    "required": ["schema_version", "id", "title", "domain", "output_type", "mode", "solvability"],
    "additionalProperties": False,
    "allOf": [
        {
            "if": {"properties": {"mode": {"const": "ground_truth_computable"}}},
            "then": {"required": ["ground_truth"],
                     "not": {"anyOf": [{"required": ["baseline"]}, {"required": ["validator"]}]}},
        },
        {
            "if": {"properties": {"mode": {"const": "benchmark_best_known"}}},
            "then": {"required": ["baseline", "validator"],
                     "not": {"anyOf": [{"required": ["ground_truth"]}, {"required": ["admissibility"]}]}},
        },
        {
            "if": {"properties": {"mode": {"const": "new_construction"}}},
            "then": {"required": ["validator"],
                     "not": {"anyOf": [{"required": ["ground_truth"]}, {"required": ["baseline"]},
                                       {"required": ["admissibility"]}]}},
        },
    ],
}
