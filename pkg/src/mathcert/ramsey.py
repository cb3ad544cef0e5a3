"""Interval certificate checker for the GNNW diagonal Ramsey framework.

A certificate is a correction polynomial ``p`` (no constant term) and two
piecewise-constant witnesses ``M`` and ``Y`` on ``[0.001, 1]``.  With

    F(l)  = (1+l) log(1+l) - l log l + p(l) e^-l
    F'(l) = log((1+l)/l) + (p'(l) - p(l)) e^-l
    X(l)  = (1 - e^-F'(l))^(1/(1-M(l))) (1 - M(l))

the checker certifies, on every cell of a partition of ``[lambda_min, 1]``:

    (1) F > 0 and F' > 0
    (2) (X, Y) or (Y, X) lies in R0
    (3) F > -(log X + l log M + l log Y) / 2

where ``(x, y)`` is in R0 iff ``-log x - mu log y >= U(mu)`` for all
``mu`` in ``(0, 1]``.  Below ``l = 0.001`` the tables are replaced by
``M(l) = l e^-l`` and the two-branch analytic ``Y``.

Verdicts are three-valued.  PASS needs a strictly positive interval margin on
every cell; FAIL needs a point evaluation that violates a condition and still
does so at doubled precision; everything else is UNDECIDED.
"""

from __future__ import annotations

import bisect
import math
import time
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction

import mpmath

from .constructions import BaselineSpec, CandidateSchemaError, Validator, params_schema, register
from .numeric import BigFloat, Interval, IntervalArithmetic, IntervalDomainError
from .numeric.bigfloat import fraction_to_decimal, mpf_to_fraction
from .report import EvaluationReport, Verdict, render_exact

SMALL_LAMBDA = Fraction(1, 1000)
MAX_BREAKPOINTS = 500
MAX_COEFFICIENTS = 8
# G(mu) = (-0.25 mu + 0.033 mu^2 + 0.08 mu^3) e^-mu, lowest degree first, no constant term
G_COEFFS = (Fraction(0), Fraction(-1, 4), Fraction(33, 1000), Fraction(2, 25))
ALPHA_SMALL_NUMERATOR = Fraction(17, 100) - Fraction(33, 1000)  # alpha_small = this / e


class RamseyCertificateError(CandidateSchemaError):
    """Structural problem with a certificate."""


def _exact(v, what: str) -> Fraction:
    if isinstance(v, bool):
        raise RamseyCertificateError(f"{what} is a boolean")
    if isinstance(v, float):
        v = repr(v)
    try:
        if isinstance(v, str):
            return Fraction(Decimal(v.strip()))
        if isinstance(v, (int, Decimal, Fraction)):
            if isinstance(v, Decimal) and not v.is_finite():
                raise ValueError
            return Fraction(v)
    except (ValueError, ArithmeticError):
        pass
    raise RamseyCertificateError(f"{what} = {v!r} is not a finite number")


@dataclass(frozen=True)
class StepFunction:
    """Piecewise constant on [0.001, 1]: ``values[j]`` holds on
    ``[breakpoints[j-1], breakpoints[j])`` with the outer pieces closed at the ends."""

    breakpoints: tuple
    values: tuple

    def __post_init__(self):
        bp, vals = self.breakpoints, self.values
        if len(bp) > MAX_BREAKPOINTS:
            raise RamseyCertificateError(f"{len(bp)} breakpoints, at most {MAX_BREAKPOINTS} allowed")
        if len(vals) != len(bp) + 1:
            raise RamseyCertificateError(f"{len(vals)} values for {len(bp)} breakpoints; "
                                         f"need {len(bp) + 1}")
        if any(b >= c for b, c in zip(bp, bp[1:])):
            raise RamseyCertificateError("breakpoints must be strictly increasing")
        if bp and (bp[0] < SMALL_LAMBDA or bp[-1] >= 1):
            raise RamseyCertificateError("breakpoints must lie in [0.001, 1)")
        for v in vals:
            if not 0 < v < 1:
                raise RamseyCertificateError(f"value {v} is outside (0, 1)")

    @classmethod
    def parse(cls, obj, name: str) -> "StepFunction":
        if not isinstance(obj, dict) or set(obj) != {"breakpoints", "values"}:
            raise RamseyCertificateError(f"{name} must be an object with 'breakpoints' and 'values'")
        bp, vals = obj["breakpoints"], obj["values"]
        if not isinstance(bp, list) or not isinstance(vals, list):
            raise RamseyCertificateError(f"{name} breakpoints and values must be lists")
        return cls(tuple(_exact(b, f"{name}.breakpoints[{i}]") for i, b in enumerate(bp)),
                   tuple(_exact(v, f"{name}.values[{i}]") for i, v in enumerate(vals)))

    @classmethod
    def constant(cls, v) -> "StepFunction":
        return cls((), (Fraction(v),))

    def value_at(self, lam: Fraction) -> Fraction:
        return self.values[bisect.bisect_right(self.breakpoints, lam)]

    def to_dict(self) -> dict:
        return {"breakpoints": [str(b) for b in self.breakpoints], "values": [str(v) for v in self.values]}


@dataclass(frozen=True)
class RamseyCertificate:
    coefficients: tuple           # c_1 .. c_m of p(l) = sum c_j l^j
    M: StepFunction
    Y: StepFunction
    notes: str = ""
    constant_term: Fraction = Fraction(0)

    def __post_init__(self):
        if self.constant_term != 0:
            raise RamseyCertificateError("p must have no constant term")
        if not 1 <= len(self.coefficients) <= MAX_COEFFICIENTS:
            raise RamseyCertificateError(f"need 1 to {MAX_COEFFICIENTS} correction coefficients, "
                                         f"got {len(self.coefficients)}")

    @classmethod
    def from_dict(cls, obj) -> "RamseyCertificate":
        if not isinstance(obj, dict):
            raise RamseyCertificateError("certificate must be a JSON object")
        allowed = {"correction_coeffs", "M", "Y", "notes", "constant_term"}
        extra = sorted(set(obj) - allowed)
        if extra:
            raise RamseyCertificateError(f"unexpected certificate fields {extra}")
        missing = sorted({"correction_coeffs", "M", "Y"} - set(obj))
        if missing:
            raise RamseyCertificateError(f"certificate is missing {missing}")
        coeffs = obj["correction_coeffs"]
        if not isinstance(coeffs, list):
            raise RamseyCertificateError("correction_coeffs must be a list")
        notes = obj.get("notes", "")
        if not isinstance(notes, str):
            raise RamseyCertificateError("notes must be a string")
        return cls(tuple(_exact(c, f"correction_coeffs[{i}]") for i, c in enumerate(coeffs)),
                   StepFunction.parse(obj["M"], "M"), StepFunction.parse(obj["Y"], "Y"), notes,
                   _exact(obj.get("constant_term", 0), "constant_term"))

    @property
    def p(self) -> tuple:
        """Coefficients of p, lowest degree first (constant term included, always 0)."""
        return (Fraction(0),) + tuple(self.coefficients)

    @property
    def dp_minus_p(self) -> tuple:
        p = self.p
        dp = tuple(k * p[k] for k in range(1, len(p))) + (Fraction(0),)
        return tuple(a - b for a, b in zip(dp, p))

    def p_at(self, lam: Fraction) -> Fraction:
        return sum(c * lam ** k for k, c in enumerate(self.p))


def resulting_c(cert: RamseyCertificate, digits: int = 30) -> BigFloat:
    """``c = e^{F(1)} = 4 exp(p(1)/e)`` to ``digits`` significant digits."""
    p1 = cert.p_at(Fraction(1))
    if p1 == 0:
        return BigFloat(Decimal(4), digits)
    ctx = mpmath.MPContext()
    ctx.dps = digits + 20
    val = 4 * ctx.exp(ctx.mpf(p1.numerator) / p1.denominator / ctx.e)
    return BigFloat(fraction_to_decimal(mpf_to_fraction(val), digits), digits)


# -- interval evaluation -------------------------------------------------------

@dataclass(frozen=True)
class FrameworkValues:
    F: Interval
    dF: Interval
    X: Interval | None
    M: Interval
    Y: Interval | None
    analytic: bool = False
    lam_log_M: Interval | None = None   # l log M(l), enclosed directly where that is tighter


class _Engine:
    """Interval formulas at one working precision."""

    def __init__(self, precision: int):
        self.precision = precision
        self.ops = ops = IntervalArithmetic(precision)
        self.one = ops.from_rational(1)
        self.half = ops.from_rational(Fraction(1, 2))
        inv_e = ops.exp(ops.from_rational(-1))
        alpha = ops.scale(inv_e, ALPHA_SMALL_NUMERATOR)
        self.exp_alpha = ops.exp(alpha)
        self.exp_neg_alpha = ops.exp(ops.neg(alpha))
        self._u_cache: dict = {}

    def interval(self, lo: Fraction, hi: Fraction) -> Interval:
        ops = self.ops
        if lo == hi:
            return ops.from_rational(lo)
        return ops.from_rational(lo).hull(ops.from_rational(hi))

    def poly(self, coeffs, x: Interval) -> Interval:
        ops = self.ops
        acc = ops.from_rational(coeffs[-1])
        for c in reversed(coeffs[:-1]):
            acc = ops.add(ops.mul(acc, x), ops.from_rational(c))
        return acc

    def entropy(self, lam: Interval) -> Interval:
        """(1+l) log(1+l) - l log l, for l >= 0."""
        ops = self.ops
        return ops.sub(ops.one_plus_x_log(lam), ops.x_log_x(lam))

    def U(self, mu: Interval) -> Interval:
        ops = self.ops
        return ops.add(ops.mul(self.poly(G_COEFFS, mu), ops.exp(ops.neg(mu))), self.entropy(mu))

    def U_cell(self, a: Fraction, b: Fraction) -> Interval:
        key = (a, b)
        got = self._u_cache.get(key)
        if got is None:
            got = self._u_cache[key] = self.U(self.interval(a, b))
        return got

    def F_dF(self, cert: RamseyCertificate, lam: Interval):
        ops = self.ops
        decay = ops.exp(ops.neg(lam))
        F = ops.add(self.entropy(lam), ops.mul(self.poly(cert.p, lam), decay))
        log_ratio = ops.log(ops.add(self.one, ops.div(self.one, lam)))
        dF = ops.add(log_ratio, ops.mul(self.poly(cert.dp_minus_p, lam), decay))
        return F, dF

    def X_of(self, dF: Interval, M: Interval, exponent: Interval) -> Interval:
        ops = self.ops
        base = ops.sub(self.one, ops.exp(ops.neg(dF)))
        if base.lo <= 0:
            raise IntervalDomainError("1 - exp(-F') is not certified positive")
        return ops.mul(ops.exp(ops.mul(exponent, ops.log(base))), ops.sub(self.one, M))

    def framework(self, cert: RamseyCertificate, lo: Fraction, hi: Fraction, analytic: bool,
                  m: Fraction | None = None, y: Fraction | None = None,
                  need_x: bool = True) -> FrameworkValues:
        ops = self.ops
        lam = self.interval(lo, hi)
        F, dF = self.F_dF(cert, lam)
        if analytic:
            M = ops.mul(lam, ops.exp(ops.neg(lam)))
            # l log(l e^-l) = l log l - l^2
            lam_log_M = ops.sub(ops.x_log_x(lam), ops.pow_int(lam, 2))
            exponent = ops.div(self.one, ops.sub(self.one, M))
        else:
            M = ops.from_rational(m)
            lam_log_M = ops.mul(lam, ops.log(M))
            exponent = ops.from_rational(1 / (1 - m))
        if not need_x:
            return FrameworkValues(F, dF, None, M, None, analytic, lam_log_M)
        X = self.X_of(dF, M, exponent)
        if analytic:
            Y = self.analytic_Y(X)
        else:
            Y = ops.from_rational(y)
        return FrameworkValues(F, dF, X, M, Y, analytic, lam_log_M)

    def analytic_Y(self, X: Interval) -> Interval:
        ops = self.ops
        low_branch = ops.mul(self.exp_alpha, ops.sub(self.one, X))     # X <= 1/2
        high_branch = ops.sub(self.one, ops.mul(X, self.exp_neg_alpha))  # X > 1/2
        half = Decimal(1) / 2
        if X.hi <= half:
            return low_branch
        if X.lo > half:
            return high_branch
        return low_branch.hull(high_branch)


def _lambda_piece(cert: RamseyCertificate, lo: Fraction, hi: Fraction):
    """(analytic, M value, Y value) for a cell that does not straddle a breakpoint."""
    if lo < SMALL_LAMBDA:
        if hi > SMALL_LAMBDA:
            raise ValueError("cell straddles 0.001; split it there first")
        return True, None, None
    for table in (cert.M, cert.Y):
        i = bisect.bisect_right(table.breakpoints, lo)
        if i < len(table.breakpoints) and table.breakpoints[i] < hi:
            raise ValueError("cell straddles a breakpoint; split it there first")
    return False, cert.M.value_at(lo), cert.Y.value_at(lo)


def eval_framework(cert: RamseyCertificate, lam: Interval, precision: int = 40) -> FrameworkValues:
    """Enclosures of F, F', X, M and Y over ``lam``.

    ``lam`` must lie in (0, 1] and inside one piece of the tables (or entirely
    below 0.001, where the analytic M and Y apply).
    """
    lo, hi = Fraction(lam.lo), Fraction(lam.hi)
    if lo <= 0 or hi > 1:
        raise ValueError("lambda must lie in (0, 1]")
    analytic, m, y = _lambda_piece(cert, lo, hi)
    return _Engine(precision).framework(cert, lo, hi, analytic, m, y)


# -- R0 membership -------------------------------------------------------------

@dataclass(frozen=True)
class R0Result:
    status: str                  # "in", "out" or "undecided"
    mu: Fraction | None = None   # witness for "out", unresolved cell start otherwise
    margin: Decimal | None = None

    @property
    def certified_in(self) -> bool:
        return self.status == "in"


def _r0_margin(engine: _Engine, neg_log_x: Interval, log_y: Interval, a: Fraction, b: Fraction) -> Interval:
    ops = engine.ops
    mu = engine.interval(a, b)
    return ops.sub(ops.sub(neg_log_x, ops.mul(mu, log_y)), engine.U_cell(a, b))


def _u_float(mu: float) -> float:
    g = (-0.25 * mu + 0.033 * mu * mu + 0.08 * mu ** 3) * math.exp(-mu)
    return g + (1 + mu) * math.log1p(mu) - mu * math.log(mu)


_MU_GRID = sorted({10.0 ** (-k / 4) for k in range(0, 41)} | {j / 64 for j in range(1, 65)})


def _worst_mu(x: float, y: float) -> Fraction:
    """Float estimate of the mu minimising -log x - mu log y - U(mu); only a hint."""
    nlx, ly = -math.log(x), math.log(y)

    def g(mu):
        return nlx - mu * ly - _u_float(mu)

    i = min(range(len(_MU_GRID)), key=lambda k: g(_MU_GRID[k]))
    a = _MU_GRID[max(i - 1, 0)]
    b = _MU_GRID[min(i + 1, len(_MU_GRID) - 1)]
    invphi = (math.sqrt(5) - 1) / 2
    for _ in range(60):
        c, d = b - invphi * (b - a), a + invphi * (b - a)
        if g(c) < g(d):
            b = d
        else:
            a = c
    mu = Fraction(round((a + b) / 2 * 2 ** 40), 2 ** 40)
    return min(max(mu, Fraction(1, 2 ** 40)), Fraction(1))


def _in_r0(engine: _Engine, x: Interval, y: Interval, mu_tolerance: Fraction,
           eager: bool = False) -> R0Result:
    """With ``eager`` the search gives up at the first unresolvable cell."""
    ops = engine.ops
    if x.lo <= 0 or y.lo <= 0:
        return R0Result("undecided", None)
    # the defining inequality is monotone in x and y: test the worst corner
    worst_x, worst_y = Interval.point(x.hi), Interval.point(y.hi)
    best_x, best_y = Interval.point(x.lo), Interval.point(y.lo)
    nlx_worst, ly_worst = ops.neg(ops.log(worst_x)), ops.log(worst_y)
    nlx_best, ly_best = ops.neg(ops.log(best_x)), ops.log(best_y)

    def out_at(mu: Fraction) -> bool:
        return _r0_margin(engine, nlx_best, ly_best, mu, mu).hi < 0

    # refutation attempts: the closed end mu = 1, then the float minimiser
    if out_at(Fraction(1)):
        return R0Result("out", Fraction(1))
    if 0 < x.lo < 1 and 0 < y.lo < 1:
        hint = _worst_mu(float(x.lo), float(y.lo))
        if out_at(hint):
            return R0Result("out", hint)
    stack = [(Fraction(0), Fraction(1))]
    margin = None
    undecided_at = None
    while stack:
        a, b = stack.pop()
        m = _r0_margin(engine, nlx_worst, ly_worst, a, b)
        if m.lo > 0:
            margin = m.lo if margin is None else min(margin, m.lo)
            continue
        # "in" is already lost; only cells where the best corner can fail may hold a witness
        if undecided_at is not None and _r0_margin(engine, nlx_best, ly_best, a, b).lo >= 0:
            continue
        mid = (a + b) / 2
        if b - a <= mu_tolerance:
            if out_at(mid):
                return R0Result("out", mid)
            if eager:
                return R0Result("undecided", a)
            if undecided_at is None:
                undecided_at = a
            continue
        stack.append((mid, b))
        stack.append((a, mid))
    if undecided_at is not None:
        return R0Result("undecided", undecided_at)
    return R0Result("in", None, margin)


def _refute_r0(engine: _Engine, x: Interval, y: Interval) -> Fraction | None:
    """A mu at which the whole box violates the R0 inequality, if one is found cheaply."""
    ops = engine.ops
    if not (0 < x.lo and 0 < y.lo):
        return None
    nlx, ly = ops.neg(ops.log(Interval.point(x.lo))), ops.log(Interval.point(y.lo))
    candidates = [Fraction(1)]
    if x.lo < 1 and y.lo < 1:
        candidates.append(_worst_mu(float(x.lo), float(y.lo)))
    for mu in candidates:
        if _r0_margin(engine, nlx, ly, mu, mu).hi < 0:
            return mu
    return None


def in_R0(x: Interval, y: Interval, mu_tolerance=Fraction(1, 2 ** 16), precision: int = 40) -> R0Result:
    """Decide ``(x, y) in R0`` for every point of the box ``x * y``.

    ``in``: every point satisfies the inequality on all of (0, 1] with a
    positive interval margin.  ``out``: at the returned ``mu`` the inequality
    fails at every point of the box.  ``undecided``: neither could be shown
    before cells reached ``mu_tolerance``.
    """
    return _in_r0(_Engine(precision), x, y, Fraction(mu_tolerance))


# -- certificate checking -----------------------------------------------------

@dataclass(frozen=True)
class RefinementLimits:
    mu_tolerance: Fraction = Fraction(1, 2 ** 16)
    min_relative_width: Fraction = Fraction(1, 10 ** 9)
    max_cells: int = 200_000
    precision: int = 30


@dataclass
class CertificateVerdict:
    status: str                                  # PASS, FAIL or UNDECIDED
    c: BigFloat | None = None
    margin: Decimal | None = None
    counterexample: dict | None = None
    unresolved: tuple | None = None              # (lo, hi) of an unresolved cell
    cells: int = 0
    diagnostics: list = field(default_factory=list)


def _point_violation(cert, lam: Fraction, conditions, precision: int, mu_tolerance):
    """Condition violated at the single point ``lam``, with the values, or None."""
    engine = _Engine(precision)
    analytic = lam < SMALL_LAMBDA
    m = None if analytic else cert.M.value_at(lam)
    y = None if analytic else cert.Y.value_at(lam)
    try:
        v = engine.framework(cert, lam, lam, analytic, m, y, need_x=False)
    except IntervalDomainError:
        return None
    values = {"F": str(v.F.midpoint(20)), "F_prime": str(v.dF.midpoint(20))}
    if "1" in conditions:
        if v.F.hi <= 0:
            return "1", values
        if v.dF.hi <= 0:
            return "1", values
    if not ({"2", "3"} & set(conditions)):
        return None
    try:
        v = engine.framework(cert, lam, lam, analytic, m, y)
    except IntervalDomainError:
        return None
    values.update(X=str(v.X.midpoint(20)), M=str(v.M.midpoint(20)), Y=str(v.Y.midpoint(20)))
    if "2" in conditions:
        mu1 = _refute_r0(engine, v.X, v.Y)
        if mu1 is not None:
            mu2 = _refute_r0(engine, v.Y, v.X)
            if mu2 is not None:
                values.update(mu_xy=str(mu1), mu_yx=str(mu2))
                return "2", values
    if "3" in conditions:
        try:
            margin = _cond3(engine, engine.interval(lam, lam), v)
        except IntervalDomainError:
            return None
        if margin.hi <= 0:
            values["condition_3_margin"] = str(margin.midpoint(20))
            return "3", values
    return None


def _cond3(engine: _Engine, lam: Interval, v: FrameworkValues) -> Interval:
    """F + (log X + l log M + l log Y) / 2."""
    ops = engine.ops
    inner = ops.add(ops.add(ops.log(v.X), v.lam_log_M), ops.mul(lam, ops.log(v.Y)))
    return ops.add(v.F, ops.mul(engine.half, inner))


def _partition(cert: RamseyCertificate, lam_min: Fraction, lam_max: Fraction) -> list:
    cuts = {lam_min, lam_max}
    if lam_min < SMALL_LAMBDA < lam_max:
        cuts.add(SMALL_LAMBDA)
        # decades below 0.001 keep bisection from wasting cells near lambda_min
        d = SMALL_LAMBDA / 10
        while d > lam_min:
            cuts.add(d)
            d /= 10
    for b in cert.M.breakpoints + cert.Y.breakpoints:
        if lam_min < b < lam_max:
            cuts.add(b)
    cuts = sorted(cuts)
    return list(zip(cuts, cuts[1:]))


def check_certificate(cert: RamseyCertificate, lambda_min=Fraction(1, 10 ** 6), lambda_max=Fraction(1),
                      limits: RefinementLimits | None = None, time_budget: float | None = None) -> CertificateVerdict:
    """Certify conditions (1)-(3) on ``[lambda_min, lambda_max]``."""
    limits = limits or RefinementLimits()
    lam_min, lam_max = Fraction(lambda_min), Fraction(lambda_max)
    if not 0 < lam_min < lam_max <= 1:
        raise ValueError("need 0 < lambda_min < lambda_max <= 1")
    engine = _Engine(limits.precision)
    pieces = _partition(cert, lam_min, lam_max)
    started = time.monotonic()
    cells = 0
    margin = None
    unresolved = None
    notes = []

    def fail(cond, lam, values):
        again = _point_violation(cert, lam, cond, 2 * limits.precision, limits.mu_tolerance)
        if again is None or again[0] != cond:
            return None
        ce = {"condition": cond, "lambda": str(lam), "lambda_decimal": render_exact(lam, 12),
              "values": values, "reverified_precision": 2 * limits.precision}
        return CertificateVerdict("FAIL", counterexample=ce, cells=cells,
                                  diagnostics=[f"condition ({cond}) violated at lambda = "
                                               f"{render_exact(lam, 12)}"])

    for conditions in (("1",), ("2", "3")):
        for lo0, hi0 in pieces:
            stack = [(lo0, hi0)]
            while stack:
                lo, hi = stack.pop()
                cells += 1
                certified, cell_margin = _certify_cell(engine, cert, lo, hi, conditions, limits.mu_tolerance)
                if certified:
                    margin = cell_margin if margin is None else min(margin, cell_margin)
                    continue
                mid = (lo + hi) / 2
                hit = _point_violation(cert, mid, conditions, limits.precision, limits.mu_tolerance)
                if hit is not None:
                    verdict = fail(hit[0], mid, hit[1])
                    if verdict is not None:
                        return verdict
                out_of_budget = cells >= limits.max_cells or (
                    time_budget is not None and time.monotonic() - started > time_budget)
                if hi - lo <= limits.min_relative_width * hi or out_of_budget:
                    if unresolved is None:
                        unresolved = (lo, hi, conditions)
                    if out_of_budget:
                        stack.clear()
                    continue
                stack.append((mid, hi))
                stack.append((lo, mid))
            if unresolved is not None and (cells >= limits.max_cells):
                break
        if unresolved is not None:
            # condition (1) undecided leaves X undefined somewhere: stop here
            break

    if lam_min > 0:
        notes.append(f"conditions checked on [{render_exact(lam_min, 6)}, {render_exact(lam_max, 6)}]; "
                     "the lambda -> 0 limit is not verified")
    if unresolved is not None:
        lo, hi, conds = unresolved
        notes.append(f"conditions {'/'.join(conds)} unresolved on [{render_exact(lo, 12)}, {render_exact(hi, 12)}]")
        return CertificateVerdict("UNDECIDED", unresolved=(str(lo), str(hi)), cells=cells, diagnostics=notes)
    return CertificateVerdict("PASS", c=resulting_c(cert), margin=margin, cells=cells, diagnostics=notes)


def _certify_cell(engine: _Engine, cert, lo: Fraction, hi: Fraction, conditions, mu_tolerance):
    try:
        analytic, m, y = _lambda_piece(cert, lo, hi)
        v = engine.framework(cert, lo, hi, analytic, m, y, need_x="1" not in conditions)
    except IntervalDomainError:
        return False, None
    if "1" in conditions:
        low = min(v.F.lo, v.dF.lo)
        return low > 0, low
    lam = engine.interval(lo, hi)
    try:
        c3 = _cond3(engine, lam, v)
    except IntervalDomainError:
        return False, None
    if c3.lo <= 0:
        return False, None
    r = _in_r0(engine, v.X, v.Y, mu_tolerance, eager=True)
    if not r.certified_in:
        r = _in_r0(engine, v.Y, v.X, mu_tolerance, eager=True)
        if not r.certified_in:
            return False, None
    return True, min(c3.lo, r.margin)


# -- registry binding ----------------------------------------------------------

def _evaluate_candidate(candidate, params, baseline: BaselineSpec | None, options) -> EvaluationReport:
    cert = RamseyCertificate.from_dict(candidate)
    lam_min = Fraction(options.get("lambda_min") or params.get("lambda_min") or Fraction(1, 10 ** 6))
    limits = RefinementLimits(precision=int(params.get("precision", 30)),
                              max_cells=int(params.get("max_cells", 200_000)))
    verdict = check_certificate(cert, lam_min, limits=limits,
                                time_budget=options.get("time_budget"))
    c = resulting_c(cert)
    c_exact = c.to_fraction()
    report = EvaluationReport(Verdict(verdict.status), metric=c.render(20),
                              diagnostics=list(verdict.diagnostics),
                              details={"cells": verdict.cells, "lambda_min": str(lam_min)})
    if verdict.margin is not None:
        report.certified_margin = str(verdict.margin)
    if verdict.counterexample is not None:
        report.details["counterexample"] = verdict.counterexample
    if verdict.unresolved is not None:
        report.details["unresolved"] = list(verdict.unresolved)
    if baseline is not None:
        report.baseline = render_exact(baseline.value)
        if not baseline.improves(c_exact):
            report.diagnostics.append("bound does not strictly improve the baseline")
            if report.verdict is Verdict.PASS:
                report.verdict = Verdict.FAIL
        else:
            rel = abs(c_exact - baseline.value) / abs(baseline.value)
            report.relative_improvement = render_exact(rel)
    return report


register(Validator("ramsey_gnnw", "minimize", evaluate=_evaluate_candidate,
                   description="GNNW Ramsey upper-bound certificate",
                   params_schema=params_schema({
                       "lambda_min": {"type": ["string", "number"]},
                       "precision": {"type": "integer", "minimum": 10, "maximum": 400},
                       "max_cells": {"type": "integer", "minimum": 1}})))
