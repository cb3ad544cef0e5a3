"""Exact union area for the thin-triangle Kakeya family.

Triangle ``i`` has slope ``a_i = i/N`` and intercept ``b_i``; its vertical
cross-section at ``x`` is ``[a_i x + b_i - delta (1 - x), a_i x + b_i]`` with
``delta = 1/N``.  Every endpoint is an affine function of ``x``, so the length
of the union is piecewise affine with breaks only where two endpoint lines
cross.  Integrating with the trapezoid rule between consecutive crossings is
therefore exact.

All coordinates are rescaled by a common denominator so the per-event work
is integer arithmetic; only the final sum is a Fraction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from fractions import Fraction

from .constructions import BaselineSpec, CandidateSchemaError, Validator, params_schema, register
from .report import EvaluationReport, Verdict, render_exact


@dataclass(frozen=True)
class KakeyaInstance:
    N: int

    def __post_init__(self):
        if isinstance(self.N, bool) or not isinstance(self.N, int) or self.N < 1:
            raise ValueError("N must be a positive integer")

    @property
    def delta(self) -> Fraction:
        return Fraction(1, self.N)

    def slope(self, i: int) -> Fraction:
        return Fraction(i, self.N)


def _to_rational(v, index: int) -> Fraction:
    if isinstance(v, bool):
        raise CandidateSchemaError(f"intercept {index} is a boolean")
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, float):
        if not math.isfinite(v):
            raise CandidateSchemaError(f"intercept {index} is not finite")
        v = repr(v)  # the decimal the user wrote, not the binary neighbour
    if isinstance(v, (str, Decimal)):
        try:
            d = Decimal(v.strip() if isinstance(v, str) else v)
        except InvalidOperation:
            raise CandidateSchemaError(f"intercept {index} = {v!r} is not a decimal number") from None
        if not d.is_finite():
            raise CandidateSchemaError(f"intercept {index} is not finite")
        if abs(d.adjusted()) > 1000:
            raise CandidateSchemaError(f"intercept {index} has an unreasonable exponent")
        return Fraction(d)
    raise CandidateSchemaError(f"intercept {index} has unsupported type {type(v).__name__}")


@dataclass(frozen=True)
class KakeyaCandidate:
    intercepts: tuple

    @classmethod
    def parse(cls, values, instance: KakeyaInstance | None = None) -> "KakeyaCandidate":
        if not isinstance(values, (list, tuple)):
            raise CandidateSchemaError("intercepts must be a list")
        if instance is not None and len(values) != instance.N:
            raise CandidateSchemaError(f"expected {instance.N} intercepts, got {len(values)}")
        if not values:
            raise CandidateSchemaError("no intercepts given")
        return cls(tuple(_to_rational(v, i) for i, v in enumerate(values)))


class _Scaled:
    """Endpoint lines as integers: ``y * D = A x + B``."""

    def __init__(self, instance: KakeyaInstance, cand: KakeyaCandidate):
        if len(cand.intercepts) != instance.N:
            raise CandidateSchemaError(f"expected {instance.N} intercepts, got {len(cand.intercepts)}")
        n, delta = instance.N, instance.delta
        lines = []
        for i, b in enumerate(cand.intercepts):
            a = instance.slope(i)
            lines.append((a + delta, b - delta))   # lower endpoint
            lines.append((a, b))                   # upper endpoint
        D = 1
        for a, c in lines:
            D = math.lcm(D, a.denominator, c.denominator)
        self.D = D
        self.n = n
        self.lines = [(a.numerator * (D // a.denominator), c.numerator * (D // c.denominator))
                      for a, c in lines]

    def length_scaled(self, p: int, q: int) -> int:
        """Union length at x = p/q, times q*D."""
        L = self.lines
        ivs = sorted((L[2 * i][0] * p + L[2 * i][1] * q, L[2 * i + 1][0] * p + L[2 * i + 1][1] * q)
                     for i in range(self.n))
        total = 0
        cs, ce = ivs[0]
        for s, e in ivs[1:]:
            if s > ce:
                total += ce - cs
                cs, ce = s, e
            elif e > ce:
                ce = e
        return total + ce - cs

    def length(self, x: Fraction) -> Fraction:
        return Fraction(self.length_scaled(x.numerator, x.denominator), x.denominator * self.D)

    def events(self) -> list[Fraction]:
        xs = {Fraction(0), Fraction(1)}
        L = self.lines
        for i in range(len(L)):
            a1, b1 = L[i]
            for j in range(i + 1, len(L)):
                a2, b2 = L[j]
                if a1 != a2:
                    num, den = b2 - b1, a1 - a2
                    # 0 < num/den < 1 without building the Fraction first
                    if den < 0:
                        num, den = -num, -den
                    if 0 < num < den:
                        xs.add(Fraction(num, den))
        return sorted(xs)


def union_length_at(instance: KakeyaInstance, candidate: KakeyaCandidate, x) -> Fraction:
    """Exact measure of the union of cross-sections at ``x`` in [0, 1]."""
    x = Fraction(x)
    if not 0 <= x <= 1:
        raise ValueError("x must lie in [0, 1]")
    return _Scaled(instance, candidate).length(x)


def event_abscissae(instance: KakeyaInstance, candidate: KakeyaCandidate) -> list[Fraction]:
    """Sorted, deduplicated crossings in (0, 1) of all endpoint lines, plus 0 and 1."""
    return _Scaled(instance, candidate).events()


def union_area_exact(instance: KakeyaInstance, candidate: KakeyaCandidate) -> Fraction:
    """Exact area of the union of the N triangles."""
    s = _Scaled(instance, candidate)
    xs = s.events()
    # sum of (x1 - x0) (L0 + L1) over segments, with L = len_scaled / (q D)
    total = Fraction(0)
    prev_x = xs[0]
    prev_len = Fraction(s.length_scaled(prev_x.numerator, prev_x.denominator), prev_x.denominator)
    for x in xs[1:]:
        cur = Fraction(s.length_scaled(x.numerator, x.denominator), x.denominator)
        total += (x - prev_x) * (prev_len + cur)
        prev_x, prev_len = x, cur
    return total / (2 * s.D)


def verify_kakeya(instance: KakeyaInstance, candidate: KakeyaCandidate,
                  baseline: BaselineSpec) -> EvaluationReport:
    """PASS iff the exact union area is strictly below the baseline."""
    area = union_area_exact(instance, candidate)
    details = {"area_exact": f"{area.numerator}/{area.denominator}",
               "area_decimal": render_exact(area, 20), "N": instance.N}
    report = EvaluationReport(Verdict.FAIL, metric=render_exact(area, 20),
                              baseline=render_exact(baseline.value), details=details)
    if baseline.direction != "minimize":
        raise ValueError("the Kakeya objective is minimized")
    if area < baseline.value:
        rel = (baseline.value - area) / baseline.value
        report.verdict = Verdict.PASS
        report.relative_improvement = render_exact(rel)
        details["relative_improvement_exact"] = str(rel)
    elif area == baseline.value:
        report.diagnostics.append("area ties the baseline; strict improvement is required")
    else:
        report.diagnostics.append("area does not beat the baseline")
    return report


def _evaluate_candidate(candidate, params, baseline, options) -> EvaluationReport:
    if not isinstance(candidate, dict) or "intercepts" not in candidate:
        raise CandidateSchemaError("candidate must be an object with an 'intercepts' list")
    extra = sorted(set(candidate) - {"intercepts", "notes"})
    if extra:
        raise CandidateSchemaError(f"unexpected candidate fields {extra}")
    instance = KakeyaInstance(int(params.get("N", 128)))
    cand = KakeyaCandidate.parse(candidate["intercepts"], instance)
    if baseline is None:
        area = union_area_exact(instance, cand)
        return EvaluationReport(Verdict.PASS, metric=render_exact(area, 20),
                                details={"area_exact": f"{area.numerator}/{area.denominator}"})
    return verify_kakeya(instance, cand, baseline)


register(Validator("kakeya_thin_triangle", "minimize", evaluate=_evaluate_candidate,
                   description="thin-triangle Kakeya union area",
                   params_schema=params_schema({"N": {"type": "integer", "minimum": 1}}, ("N",))))
