"""Loading and validating problem manifests."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from decimal import Decimal
from pathlib import Path

import jsonschema

from ..constructions import BaselineSpec, ConfigurationError, Validator, get_validator
from ..expr import AdmissibilityPolicy
from ..ground_truth import GroundTruthSpec, ReferenceValue
from .schema import MANIFEST_SCHEMA


class ManifestError(ValueError):
    """A manifest failed schema validation or refers to unknown names."""


def load_json(path) -> object:
    """Parse JSON keeping every non-integer number as an exact Decimal."""
    with open(path, encoding="utf-8") as fh:
        return json.load(fh, parse_float=Decimal)


def _json_default(o):
    if isinstance(o, Decimal):
        return str(o)
    raise TypeError(type(o).__name__)


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True, default=_json_default)


_VALIDATOR = jsonschema.Draft202012Validator(MANIFEST_SCHEMA)


@dataclass(frozen=True)
class ProblemManifest:
    id: str
    title: str
    domain: str
    output_type: str
    mode: str
    solvability: int
    raw: dict = field(repr=False, compare=False)
    ground_truth: GroundTruthSpec | None = None
    baseline: BaselineSpec | None = None
    validator: Validator | None = None
    validator_params: dict = field(default_factory=dict)
    policy: AdmissibilityPolicy = field(default_factory=AdmissibilityPolicy)
    path: str | None = None

    @property
    def statement(self) -> str:
        return self.raw.get("statement", "")

    @property
    def manifest_hash(self) -> str:
        return hashlib.sha256(canonical_json(self.raw).encode()).hexdigest()

    def references(self) -> list[ReferenceValue]:
        if self.ground_truth is None:
            return []
        return [p.reference for p in self.ground_truth.points]


def _schema_errors(obj) -> list[str]:
    errors = sorted(_VALIDATOR.iter_errors(obj), key=lambda e: list(e.absolute_path))
    out = []
    for e in errors:
        where = "/".join(str(p) for p in e.absolute_path) or "<root>"
        out.append(f"{where}: {e.message}")
    return out


def _ground_truth(obj: dict) -> GroundTruthSpec:
    absolute = bool(obj.get("absolute", False))
    if obj["kind"] == "constant":
        return GroundTruthSpec.constant(ReferenceValue.from_dict(obj["reference"]), absolute)
    variables = set(obj["variables"])
    points = []
    for i, pt in enumerate(obj["points"]):
        if set(pt["bindings"]) != variables:
            raise ManifestError(f"ground_truth/points/{i}: bindings {sorted(pt['bindings'])} "
                                f"do not match variables {sorted(variables)}")
        points.append((pt["bindings"], ReferenceValue.from_dict(pt["reference"])))
    return GroundTruthSpec.grid(points, absolute)


def manifest_from_dict(obj, path: str | None = None) -> ProblemManifest:
    """Validate an already-parsed manifest object."""
    errors = _schema_errors(obj)
    if errors:
        raise ManifestError("manifest does not match the schema:\n  " + "\n  ".join(errors))
    try:
        gt = _ground_truth(obj["ground_truth"]) if "ground_truth" in obj else None
        baseline = BaselineSpec.from_dict(obj["baseline"]) if "baseline" in obj else None
    except (ValueError, ArithmeticError) as exc:
        raise ManifestError(str(exc)) from exc
    validator = None
    params = {}
    if "validator" in obj:
        try:
            validator = get_validator(obj["validator"]["id"])
        except ConfigurationError as exc:
            raise ManifestError(str(exc)) from exc
        params = dict(obj["validator"].get("params", {}))
        perr = [f"validator/params: {e.message}"
                for e in jsonschema.Draft202012Validator(validator.params_schema).iter_errors(params)]
        if perr:
            raise ManifestError("\n".join(perr))
        if obj["mode"] == "benchmark_best_known" and validator.objective is None:
            raise ManifestError(f"validator {validator.id!r} has no objective to compare with a baseline")
    return ProblemManifest(
        id=obj["id"], title=obj["title"], domain=obj["domain"], output_type=obj["output_type"],
        mode=obj["mode"], solvability=obj["solvability"], raw=obj, ground_truth=gt,
        baseline=baseline, validator=validator, validator_params=params,
        policy=AdmissibilityPolicy.from_overrides(obj.get("admissibility")), path=path)


def load_manifest(path) -> ProblemManifest:
    path = Path(path)
    try:
        obj = load_json(path)
    except json.JSONDecodeError as exc:
        raise ManifestError(f"{path}: not valid JSON ({exc})") from exc
    return manifest_from_dict(obj, str(path))


def load_registry(directory) -> list[ProblemManifest]:
    """Every ``*.json`` manifest in ``directory``, sorted by problem id."""
    manifests = [load_manifest(p) for p in sorted(Path(directory).glob("*.json"))]
    ids = [m.id for m in manifests]
    dupes = sorted({i for i in ids if ids.count(i) > 1})
    if dupes:
        raise ManifestError(f"duplicate problem ids in {directory}: {dupes}")
    return sorted(manifests, key=lambda m: m.id)
