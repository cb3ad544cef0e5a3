"""Ground-truth mode: match an evaluated closed form against reference digits."""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from .expr import (
    AdmissibilityPolicy,
    EvaluationDomainError,
    Expression,
    InstabilityError,
    UnboundVariableError,
    UnsupportedTierError,
    check_admissibility,
    evaluate,
    free_variables,
)
from .numeric import BigFloat, parse_rational
from .report import EvaluationReport, Verdict

MAX_REQUIRED_DIGITS = 20
EXTRA_DIGITS = 10


class InsufficientPrecisionError(ValueError):
    pass


@dataclass(frozen=True)
class ReferenceValue:
    """Reference digits kept as text; ``verified_digits`` of them are trusted."""

    digits: str
    verified_digits: int

    def __post_init__(self):
        try:
            d = Decimal(self.digits)
        except InvalidOperation as exc:
            raise ValueError(f"reference digits {self.digits!r} are not a decimal") from exc
        if not d.is_finite():
            raise ValueError("reference must be finite")
        if isinstance(self.verified_digits, bool) or not isinstance(self.verified_digits, int):
            raise ValueError("verified_digits must be an integer")
        if self.verified_digits < 1:
            raise ValueError("verified_digits must be >= 1")
        stored = self.significand_digits
        if self.verified_digits > stored:
            raise ValueError(f"verified_digits {self.verified_digits} exceeds the {stored} "
                             "significand digits stored")

    @property
    def value(self) -> Fraction:
        return Fraction(Decimal(self.digits))

    @property
    def significand_digits(self) -> int:
        digits = Decimal(self.digits).as_tuple().digits
        # leading zeros never appear in the tuple; a bare zero counts as one digit
        return max(1, len(digits))

    @property
    def required_digits(self) -> int:
        return min(MAX_REQUIRED_DIGITS, self.verified_digits)

    @classmethod
    def from_dict(cls, obj: dict) -> "ReferenceValue":
        return cls(str(obj["digits"]), obj["verified_digits"])

    def to_dict(self) -> dict:
        return {"digits": self.digits, "verified_digits": self.verified_digits}


@dataclass(frozen=True)
class GridPoint:
    bindings: tuple  # ((name, Fraction), ...) sorted by name
    reference: ReferenceValue

    @property
    def binding_map(self) -> dict:
        return dict(self.bindings)


@dataclass(frozen=True)
class GroundTruthSpec:
    kind: str                     # "constant" or "function-grid"
    points: tuple                 # GridPoint; a constant has one point with no bindings
    absolute: bool = False        # compare decimal places instead of significant digits

    def __post_init__(self):
        if self.kind not in ("constant", "function-grid"):
            raise ValueError(f"unknown ground-truth kind {self.kind!r}")
        if not self.points:
            raise ValueError("ground truth needs at least one reference point")
        if self.kind == "constant" and (len(self.points) != 1 or self.points[0].bindings):
            raise ValueError("a constant ground truth has exactly one unbound reference")
        names = {tuple(n for n, _ in p.bindings) for p in self.points}
        if len(names) != 1:
            raise ValueError("all grid points must bind the same variables")

    @property
    def variables(self) -> frozenset:
        return frozenset(n for n, _ in self.points[0].bindings)

    @classmethod
    def constant(cls, reference: ReferenceValue, absolute: bool = False) -> "GroundTruthSpec":
        return cls("constant", (GridPoint((), reference),), absolute)

    @classmethod
    def grid(cls, points, absolute: bool = False) -> "GroundTruthSpec":
        pts = []
        for bindings, ref in points:
            b = tuple(sorted((k, parse_rational(v)) for k, v in bindings.items()))
            pts.append(GridPoint(b, ref))
        return cls("function-grid", tuple(pts), absolute)


def digits_match(candidate: BigFloat, ref: ReferenceValue, absolute: bool = False) -> int:
    """Largest ``k <= D`` with ``|candidate - ref| <= 10^-k * |ref|``.

    With ``absolute`` (or a zero reference) the bound is ``10^-k`` instead.
    The comparison is exact: both sides are converted to rationals.
    """
    d = ref.verified_digits
    if candidate.precision < d + EXTRA_DIGITS:
        raise InsufficientPrecisionError(
            f"candidate carries {candidate.precision} digits; need at least {d + EXTRA_DIGITS}")
    r = ref.value
    err = abs(candidate.to_fraction() - r)
    scale = 1 if (absolute or r == 0) else abs(r)
    if err == 0:
        return d
    k = 0
    # k is small (<= D), a linear scan is fine
    while k < d and err * 10 ** (k + 1) <= scale:
        k += 1
    return k


def verify_ground_truth(spec: GroundTruthSpec, e: Expression,
                        policy: AdmissibilityPolicy | None = None,
                        precision: int | None = None) -> EvaluationReport:
    """PASS iff ``e`` is admissible and matches every reference to min(20, D) digits."""
    policy = policy or AdmissibilityPolicy()
    admissibility = check_admissibility(e, policy)
    if not admissibility.admissible:
        return EvaluationReport(
            Verdict.INADMISSIBLE,
            diagnostics=[f"{v.rule} at {v.path}: {v.message}" for v in admissibility.violations],
            details={"admissibility": admissibility.to_dict()})

    extra = free_variables(e) - spec.variables
    if extra:
        return EvaluationReport(Verdict.FAIL, diagnostics=[
            f"candidate uses variables {sorted(extra)} that the problem does not bind"])

    matches = []
    diagnostics = []
    all_ok = True
    for point in spec.points:
        ref = point.reference
        target = max(precision or 0, ref.verified_digits + EXTRA_DIGITS)
        label = ", ".join(f"{k}={v}" for k, v in point.bindings) or "constant"
        try:
            value = evaluate(e, point.binding_map, target)
        except InstabilityError as exc:
            return EvaluationReport(Verdict.UNDECIDED, point_matches=matches,
                                    diagnostics=[f"instability at {label}: {exc}"])
        except UnsupportedTierError as exc:
            return EvaluationReport(Verdict.ERROR, point_matches=matches,
                                    diagnostics=[f"unsupported-tier: {exc}"])
        except (EvaluationDomainError, UnboundVariableError) as exc:
            return EvaluationReport(Verdict.FAIL, point_matches=matches,
                                    diagnostics=[f"evaluation failed at {label}: {exc}"])
        k = digits_match(value, ref, absolute=spec.absolute)
        need = ref.required_digits
        ok = k >= need
        all_ok &= ok
        matches.append({"point": label, "matched": k, "required": need,
                        "value": value.render(min(target, need + 5))})
        if not ok:
            diagnostics.append(f"{label}: matched {k} digits, need {need}")

    worst = min(m["matched"] for m in matches)
    return EvaluationReport(
        Verdict.PASS if all_ok else Verdict.FAIL,
        matched_digits=worst,
        required_digits=max(m["required"] for m in matches),
        point_matches=matches,
        diagnostics=diagnostics)
