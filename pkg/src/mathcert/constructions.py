"""Construction validators, baseline scoring and the validator registry.

Validators are pure functions of already-decoded data.  Anything that is not
the right *kind* of data (a string where an integer belongs, a missing key)
raises ``CandidateSchemaError``; anything that is well-typed but mathematically
wrong (a short row, a repeated difference) is an invalid outcome with
diagnostics.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable

import numpy as np

from .numeric import parse_rational
from .report import EvaluationReport, Verdict, render_exact

DIRECTIONS = ("minimize", "maximize")


class CandidateSchemaError(ValueError):
    """The candidate object does not have the declared shape or types."""


class ConfigurationError(LookupError):
    """A manifest refers to something the engine does not know."""


@dataclass(frozen=True)
class ValidationOutcome:
    valid: bool
    metric: Fraction | None = None
    diagnostics: tuple = ()
    details: dict = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class BaselineSpec:
    value: Fraction
    direction: str = "minimize"
    source: str = ""

    def __post_init__(self):
        if self.direction not in DIRECTIONS:
            raise ValueError(f"direction must be one of {DIRECTIONS}, got {self.direction!r}")
        object.__setattr__(self, "value", parse_rational(self.value))

    @classmethod
    def from_dict(cls, obj: dict) -> "BaselineSpec":
        return cls(parse_rational(obj["value"]), obj.get("direction", "minimize"),
                   obj.get("source", ""))

    def improves(self, metric: Fraction) -> bool:
        return metric < self.value if self.direction == "minimize" else metric > self.value


# -- shape helpers --------------------------------------------------------

def _is_int(v) -> bool:
    return isinstance(v, (int, np.integer)) and not isinstance(v, (bool, np.bool_))


def _int_matrix(obj, name: str) -> list[list[int]]:
    if not isinstance(obj, list) or not all(isinstance(r, list) for r in obj):
        raise CandidateSchemaError(f"{name} must be a list of integer lists")
    for i, row in enumerate(obj):
        for j, v in enumerate(row):
            if not _is_int(v):
                raise CandidateSchemaError(f"{name}[{i}][{j}] = {v!r} is not an integer")
    return [[int(v) for v in row] for row in obj]


def _require(candidate, keys):
    if not isinstance(candidate, dict):
        raise CandidateSchemaError("candidate must be a JSON object")
    missing = [k for k in keys if k not in candidate]
    if missing:
        raise CandidateSchemaError(f"candidate is missing {missing}")
    extra = sorted(set(candidate) - set(keys) - {"notes"})
    if extra:
        raise CandidateSchemaError(f"unexpected candidate fields {extra}")


def _param_int(candidate, key) -> int:
    v = candidate[key]
    if not _is_int(v):
        raise CandidateSchemaError(f"{key} must be an integer, got {v!r}")
    return int(v)


# -- difference triangle sets ----------------------------------------------

def validate_dts(n: int, k: int, rows) -> ValidationOutcome:
    """An (n, k)-DTS: n rows of k+1 integers, each starting at 0 and strictly
    increasing, with all within-row differences distinct.  Metric: scope."""
    diags = []
    if len(rows) != n:
        diags.append(f"expected {n} rows, got {len(rows)}")
    for i, row in enumerate(rows):
        if len(row) != k + 1:
            diags.append(f"row {i} has {len(row)} entries, expected {k + 1}")
        if row and row[0] != 0:
            diags.append(f"row {i} does not start at 0")
        if any(v < 0 for v in row):
            diags.append(f"row {i} has a negative entry")
        if any(b <= a for a, b in zip(row, row[1:])):
            diags.append(f"row {i} is not strictly increasing")
    if diags:
        return ValidationOutcome(False, None, tuple(diags))

    seen = {}
    for i, row in enumerate(rows):
        for jl, jh in combinations(range(len(row)), 2):
            d = row[jh] - row[jl]
            if d in seen:
                pi, pl, ph = seen[d]
                diags.append(f"duplicate difference {d}: row {pi} ({rows[pi][ph]}-{rows[pi][pl]}) "
                             f"and row {i} ({row[jh]}-{row[jl]})")
            else:
                seen[d] = (i, jl, jh)
    scope = max((max(r) for r in rows if r), default=0)
    return ValidationOutcome(not diags, Fraction(scope), tuple(diags))


def _dts_from_candidate(candidate, params) -> ValidationOutcome:
    _require(candidate, ("n", "k", "rows"))
    n, k = _param_int(candidate, "n"), _param_int(candidate, "k")
    rows = _int_matrix(candidate["rows"], "rows")
    want = (params.get("n"), params.get("k"))
    if want != (None, None) and (n, k) != want:
        return ValidationOutcome(False, None, (f"candidate is an ({n},{k})-DTS; problem asks for {want}",))
    return validate_dts(n, k, rows)


# -- Hadamard matrices -------------------------------------------------------

def validate_hadamard(matrix) -> ValidationOutcome:
    """Entries in {+1, -1} and H H^T = n I, checked in exact integer arithmetic."""
    n = len(matrix)
    if n == 0:
        return ValidationOutcome(False, None, ("empty matrix",))
    if any(len(r) != n for r in matrix):
        return ValidationOutcome(False, None, (f"matrix is not square ({n} rows)",))
    h = np.array(matrix, dtype=object)
    bad = [(i, j) for i in range(n) for j in range(n) if h[i, j] not in (1, -1)]
    if bad:
        i, j = bad[0]
        return ValidationOutcome(False, None, (f"entry ({i},{j}) = {h[i, j]} is not +1 or -1"
                                               + (f" ({len(bad)} such entries)" if len(bad) > 1 else ""),))
    # entries are +-1 so int64 cannot overflow for any realistic order
    h = h.astype(np.int64)
    gram = h @ h.T
    off = gram - n * np.eye(n, dtype=np.int64)
    idx = np.argwhere(off != 0)
    if len(idx):
        i, j = (int(t) for t in idx[0])
        return ValidationOutcome(False, None, (
            f"rows {i} and {j}: dot product {int(gram[i, j])}, expected {n if i == j else 0}"
            + (f" ({len(idx)} nonzero entries in H H^T - nI)" if len(idx) > 1 else ""),))
    return ValidationOutcome(True)


def _hadamard_from_candidate(candidate, params) -> ValidationOutcome:
    _require(candidate, ("order", "matrix"))
    order = _param_int(candidate, "order")
    matrix = _int_matrix(candidate["matrix"], "matrix")
    if "order" in params and order != params["order"]:
        return ValidationOutcome(False, None, (f"candidate order {order}; problem asks for {params['order']}",))
    if len(matrix) != order:
        return ValidationOutcome(False, None, (f"declared order {order} but matrix has {len(matrix)} rows",))
    return validate_hadamard(matrix)


# -- mutually orthogonal Latin squares -------------------------------------

def _latin_problems(n: int, sq) -> list[str]:
    if len(sq) != n or any(len(r) != n for r in sq):
        return [f"not an {n}x{n} array"]
    if any(not 0 <= v < n for row in sq for v in row):
        return [f"symbols must lie in 0..{n - 1}"]
    a = np.array(sq, dtype=np.int64)
    out = []
    target = np.arange(n)
    for i in range(n):
        if not np.array_equal(np.sort(a[i]), target):
            out.append(f"row {i} is not a permutation of 0..{n - 1}")
        if not np.array_equal(np.sort(a[:, i]), target):
            out.append(f"column {i} is not a permutation of 0..{n - 1}")
    return out


def validate_mols(n: int, squares) -> ValidationOutcome:
    """Every square Latin of order n; every pair orthogonal."""
    diags = []
    if n < 1:
        return ValidationOutcome(False, None, ("order must be positive",))
    if not squares:
        return ValidationOutcome(False, None, ("no squares given",))
    for s, sq in enumerate(squares):
        diags += [f"square {s}: {p}" for p in _latin_problems(n, sq)]
    if diags:
        return ValidationOutcome(False, None, tuple(diags))
    arrays = [np.array(sq, dtype=np.int64) for sq in squares]
    for (s, a), (t, b) in combinations(enumerate(arrays), 2):
        pairs = set(zip(a.ravel().tolist(), b.ravel().tolist()))
        if len(pairs) != n * n:
            diags.append(f"squares {s} and {t} are not orthogonal "
                         f"({len(pairs)} distinct pairs of {n * n})")
    return ValidationOutcome(not diags, None, tuple(diags))


def _mols_from_candidate(candidate, params) -> ValidationOutcome:
    _require(candidate, ("order", "squares"))
    n = _param_int(candidate, "order")
    squares = candidate["squares"]
    if not isinstance(squares, list):
        raise CandidateSchemaError("squares must be a list of integer matrices")
    squares = [_int_matrix(sq, f"squares[{i}]") for i, sq in enumerate(squares)]
    if "order" in params and n != params["order"]:
        return ValidationOutcome(False, None, (f"candidate order {n}; problem asks for {params['order']}",))
    need = params.get("count")
    if need is not None and len(squares) < need:
        return ValidationOutcome(False, None, (f"{len(squares)} squares given, {need} required",))
    return validate_mols(n, squares)


# -- scoring ----------------------------------------------------------------

def relative_improvement(metric: Fraction, baseline: BaselineSpec) -> Fraction:
    return abs(Fraction(metric) - baseline.value) / abs(baseline.value)


def score_against_baseline(outcome: ValidationOutcome, baseline: BaselineSpec) -> EvaluationReport:
    """PASS iff the construction is valid and strictly beats the baseline."""
    if not outcome.valid:
        return EvaluationReport(Verdict.FAIL, diagnostics=["invalid construction"] + list(outcome.diagnostics),
                                details=dict(outcome.details))
    if outcome.metric is None:
        raise ValueError("baseline scoring needs an objective value")
    m = Fraction(outcome.metric)
    details = dict(outcome.details)
    details["metric_exact"] = str(m)
    details["baseline_exact"] = str(baseline.value)
    report = EvaluationReport(Verdict.FAIL, metric=render_exact(m), baseline=render_exact(baseline.value),
                              details=details, diagnostics=list(outcome.diagnostics))
    if baseline.improves(m):
        rel = relative_improvement(m, baseline)
        report.verdict = Verdict.PASS
        report.relative_improvement = render_exact(rel)
        details["relative_improvement_exact"] = str(rel)
    elif m == baseline.value:
        report.relative_improvement = render_exact(Fraction(0))
        details["relative_improvement_exact"] = "0"
        report.diagnostics.append("metric ties the baseline; strict improvement is required")
    else:
        report.diagnostics.append(f"metric is worse than the baseline ({baseline.direction})")
    return report


def construction_report(outcome: ValidationOutcome) -> EvaluationReport:
    """New-construction mode: validity alone decides."""
    report = EvaluationReport(Verdict.PASS if outcome.valid else Verdict.FAIL,
                              diagnostics=list(outcome.diagnostics), details=dict(outcome.details))
    if outcome.metric is not None:
        report.metric = render_exact(outcome.metric)
    return report


# -- registry ---------------------------------------------------------------

@dataclass(frozen=True)
class Validator:
    id: str
    objective: str | None                 # default direction, or None without an objective
    validate: Callable | None = None      # (candidate, params) -> ValidationOutcome
    evaluate: Callable | None = None      # (candidate, params, baseline, options) -> EvaluationReport
    description: str = ""
    params_schema: dict = field(default_factory=lambda: {"type": "object", "additionalProperties": False})


_REGISTRY: dict[str, Validator] = {}


def register(validator: Validator) -> Validator:
    _REGISTRY[validator.id] = validator
    return validator


def params_schema(properties: dict, required=()) -> dict:
    return {"type": "object", "properties": properties, "required": list(required),
            "additionalProperties": False}


_POSITIVE_INT = {"type": "integer", "minimum": 1}

register(Validator("dts", "minimize", _dts_from_candidate, description="(n,k) difference triangle set",
                   params_schema=params_schema({"n": _POSITIVE_INT, "k": _POSITIVE_INT}, ("n", "k"))))
register(Validator("hadamard", None, _hadamard_from_candidate, description="Hadamard matrix",
                   params_schema=params_schema({"order": _POSITIVE_INT}, ("order",))))
register(Validator("mols", None, _mols_from_candidate, description="mutually orthogonal Latin squares",
                   params_schema=params_schema({"order": _POSITIVE_INT, "count": _POSITIVE_INT},
                                               ("order", "count"))))


def _load_builtin():
    # kakeya and ramsey register themselves on import
    from . import kakeya, ramsey  # noqa: F401


def get_validator(validator_id: str) -> Validator:
    _load_builtin()
    try:
        return _REGISTRY[validator_id]
    except KeyError:
        raise ConfigurationError(f"unknown validator id {validator_id!r}; "
                                 f"known: {sorted(_REGISTRY)}") from None


def validator_ids() -> list[str]:
    _load_builtin()
    return sorted(_REGISTRY)
