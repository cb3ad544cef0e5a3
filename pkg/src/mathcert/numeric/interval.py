"""Outward-rounded interval arithmetic over decimal endpoints.

Soundness rests on two facts about :mod:`decimal`: the four basic operations
honour the context rounding mode, and ``exp``/``ln``/``sqrt`` are correctly
rounded (half-even).  Directed rounding gives the first; widening a correctly
rounded result by half a unit in the last place on each side gives the second.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_CEILING, ROUND_FLOOR, ROUND_HALF_EVEN, Decimal
from fractions import Fraction
from typing import Sequence

from .bigfloat import BigFloat, make_context, round_directed


class IntervalDomainError(ArithmeticError):
    """An interval operation was asked to leave its domain.

    Callers that bisect treat this as "could not decide here"; it is never a
    statement that the exact operation is undefined on every point.
    """


@dataclass(frozen=True)
class Interval:
    lo: Decimal
    hi: Decimal

    def __post_init__(self):
        if not (self.lo.is_finite() and self.hi.is_finite()):
            raise ValueError("interval endpoints must be finite")
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, value) -> "Interval":
        d = Decimal(value) if not isinstance(value, Decimal) else value
        return cls(d, d)

    def contains(self, x) -> bool:
        if isinstance(x, Interval):
            return self.lo <= x.lo and x.hi <= self.hi
        if isinstance(x, Fraction):
            return Fraction(self.lo) <= x <= Fraction(self.hi)
        if isinstance(x, BigFloat):
            x = x.value
        return self.lo <= Decimal(x) <= self.hi

    __contains__ = contains

    @property
    def width(self) -> Decimal:
        return make_context(60, ROUND_CEILING).subtract(self.hi, self.lo)

    def midpoint(self, precision: int) -> Decimal:
        ctx = make_context(precision + 2)
        return ctx.divide(ctx.add(self.lo, self.hi), 2)

    def is_point(self) -> bool:
        return self.lo == self.hi

    def hull(self, other: "Interval") -> "Interval":
        return Interval(min(self.lo, other.lo), max(self.hi, other.hi))

    def excludes_zero(self) -> bool:
        return self.lo > 0 or self.hi < 0

    def __repr__(self):
        return f"Interval[{self.lo}, {self.hi}]"


class IntervalArithmetic:
    """Interval operations at a fixed, explicit digit precision.

    Instances are cheap and hold no state beyond their contexts, so concurrent
    callers should each build their own.
    """

    def __init__(self, precision: int):
        if precision < 1:
            raise ValueError("precision must be >= 1")
        self.precision = precision
        self._down = make_context(precision, ROUND_FLOOR)
        self._up = make_context(precision, ROUND_CEILING)
        self._near = make_context(precision, ROUND_HALF_EVEN)
        self._half_down = make_context(precision + 2, ROUND_FLOOR)
        self._half_up = make_context(precision + 2, ROUND_CEILING)

    # -- construction -----------------------------------------------------

    def from_rational(self, r) -> Interval:
        lo, hi = round_directed(Fraction(r), self.precision)
        return Interval(lo, hi)

    def from_decimal(self, d: Decimal) -> Interval:
        return Interval(self._down.plus(d), self._up.plus(d))

    def coerce(self, x) -> Interval:
        if isinstance(x, Interval):
            return x
        if isinstance(x, Decimal):
            return self.from_decimal(x)
        if isinstance(x, (int, Fraction)):
            return self.from_rational(Fraction(x))
        if isinstance(x, BigFloat):
            return self.from_decimal(x.value)
        raise TypeError(f"cannot make an interval from {type(x).__name__}")

    def _pad(self, r: Decimal) -> Interval:
        # r is correctly rounded to nearest: the exact value is within half an ulp
        # so the half-way points to its neighbours, kept at two extra digits, bracket it
        if not r.is_finite():
            raise IntervalDomainError("result overflowed the decimal exponent range")
        below, above = self._down.next_minus(r), self._up.next_plus(r)
        return Interval(self._half_down.divide(self._half_down.add(r, below), 2),
                        self._half_up.divide(self._half_up.add(r, above), 2))

    # -- field operations -------------------------------------------------

    def add(self, a: Interval, b: Interval) -> Interval:
        return Interval(self._down.add(a.lo, b.lo), self._up.add(a.hi, b.hi))

    def sub(self, a: Interval, b: Interval) -> Interval:
        return Interval(self._down.subtract(a.lo, b.hi), self._up.subtract(a.hi, b.lo))

    def neg(self, a: Interval) -> Interval:
        # unary minus would round to the ambient context; copy_negate is exact
        return Interval(a.hi.copy_negate(), a.lo.copy_negate())

    def mul(self, a: Interval, b: Interval) -> Interval:
        d, u = self._down, self._up
        if a.lo >= 0 and b.lo >= 0:
            return Interval(d.multiply(a.lo, b.lo), u.multiply(a.hi, b.hi))
        pairs = ((a.lo, b.lo), (a.lo, b.hi), (a.hi, b.lo), (a.hi, b.hi))
        return Interval(min(d.multiply(x, y) for x, y in pairs),
                        max(u.multiply(x, y) for x, y in pairs))

    def div(self, a: Interval, b: Interval) -> Interval:
        if not b.excludes_zero():
            raise IntervalDomainError(f"division by an interval containing zero: {b!r}")
        d, u = self._down, self._up
        pairs = ((a.lo, b.lo), (a.lo, b.hi), (a.hi, b.lo), (a.hi, b.hi))
        return Interval(min(d.divide(x, y) for x, y in pairs),
                        max(u.divide(x, y) for x, y in pairs))

    def scale(self, a: Interval, r) -> Interval:
        return self.mul(a, self.coerce(r))

    # -- elementary functions ---------------------------------------------

    def exp(self, a: Interval) -> Interval:
        lo = self._pad(self._near.exp(a.lo)).lo
        hi = self._pad(self._near.exp(a.hi)).hi
        if lo < 0:
            lo = Decimal(0)
        return Interval(lo, hi)

    def log(self, a: Interval) -> Interval:
        if a.lo <= 0:
            raise IntervalDomainError(f"log of an interval reaching <= 0: {a!r}")
        return Interval(self._pad(self._near.ln(a.lo)).lo, self._pad(self._near.ln(a.hi)).hi)

    def sqrt(self, a: Interval) -> Interval:
        if a.lo < 0:
            raise IntervalDomainError(f"sqrt of an interval reaching below 0: {a!r}")
        lo = self._pad(self._near.sqrt(a.lo)).lo if a.lo > 0 else Decimal(0)
        return Interval(max(lo, Decimal(0)), self._pad(self._near.sqrt(a.hi)).hi)

    def _pow_nonneg(self, x: Decimal, n: int, ctx) -> Decimal:
        # all partial products are >= 0, so one rounding direction bounds the result
        result = Decimal(1)
        base = x
        while n:
            if n & 1:
                result = ctx.multiply(result, base)
            n >>= 1
            if n:
                base = ctx.multiply(base, base)
        return result

    def pow_int(self, a: Interval, n: int) -> Interval:
        if n == 0:
            return Interval(Decimal(1), Decimal(1))
        if n < 0:
            return self.div(Interval(Decimal(1), Decimal(1)), self.pow_int(a, -n))
        d, u = self._down, self._up
        if n % 2 == 1:
            lo = (self._pow_nonneg(a.lo, n, d) if a.lo >= 0
                  else self._pow_nonneg(a.lo.copy_negate(), n, u).copy_negate())
            hi = (self._pow_nonneg(a.hi, n, u) if a.hi >= 0
                  else self._pow_nonneg(a.hi.copy_negate(), n, d).copy_negate())
            return Interval(lo, hi)
        if a.lo >= 0:
            return Interval(self._pow_nonneg(a.lo, n, d), self._pow_nonneg(a.hi, n, u))
        if a.hi <= 0:
            return Interval(self._pow_nonneg(a.hi.copy_negate(), n, d), self._pow_nonneg(a.lo.copy_negate(), n, u))
        return Interval(Decimal(0), self._pow_nonneg(max(a.lo.copy_negate(), a.hi), n, u))

    def pow(self, base: Interval, exponent: Interval) -> Interval:
        """``base ** exponent``; integer point exponents allow any base sign."""
        if exponent.is_point() and exponent.lo == exponent.lo.to_integral_value():
            return self.pow_int(base, int(exponent.lo))
        if base.lo <= 0:
            raise IntervalDomainError("non-integer power needs a strictly positive base")
        return self.exp(self.mul(exponent, self.log(base)))

    def root(self, a: Interval, n: int) -> Interval:
        """Real n-th root; odd roots accept negative arguments."""
        if n < 2:
            raise ValueError("root index must be >= 2")
        inv = self.from_rational(Fraction(1, n))

        def pos_root(x: Decimal, upper: bool) -> Decimal:
            if x == 0:
                return Decimal(0)
            iv = self.exp(self.mul(inv, self.log(Interval(x, x))))
            return iv.hi if upper else iv.lo

        if a.lo >= 0:
            return Interval(pos_root(a.lo, False), pos_root(a.hi, True))
        if n % 2 == 0:
            raise IntervalDomainError("even root of an interval reaching below 0")
        lo = pos_root(a.lo.copy_negate(), True).copy_negate()
        hi = pos_root(a.hi, True) if a.hi >= 0 else pos_root(a.hi.copy_negate(), False).copy_negate()
        return Interval(lo, hi)

    def x_log_x(self, a: Interval) -> Interval:
        """Tight enclosure of ``x*log(x)`` on ``a`` (a.lo >= 0), using its single minimum at 1/e."""
        if a.lo < 0:
            raise IntervalDomainError("x log x needs x >= 0")

        def f(x: Decimal) -> Interval:
            if x == 0:
                return Interval(Decimal(0), Decimal(0))
            p = Interval(x, x)
            return self.mul(p, self.log(p))

        left, right = f(a.lo), f(a.hi)
        inv_e = self.exp(Interval(Decimal(-1), Decimal(-1)))
        lo = min(left.lo, right.lo)
        hi = max(left.hi, right.hi)
        if a.lo < inv_e.hi and a.hi > inv_e.lo:
            lo = min(lo, self.neg(inv_e).lo)
        return Interval(lo, hi)

    def one_plus_x_log(self, a: Interval) -> Interval:
        """``(1+x)*log(1+x)`` for x >= 0, where it is increasing."""
        if a.lo < 0:
            raise IntervalDomainError("(1+x)log(1+x) enclosure here assumes x >= 0")
        one = Interval(Decimal(1), Decimal(1))

        def f(x: Decimal) -> Interval:
            p = self.add(one, Interval(x, x))
            return self.mul(p, self.log(p))

        return Interval(f(a.lo).lo, f(a.hi).hi)

    def max0(self, a: Interval) -> Interval:
        return Interval(max(a.lo, Decimal(0)), max(a.hi, Decimal(0)))


_UNARY = {"neg", "exp", "log"}
_BINARY = {"add", "sub", "mul", "div", "pow"}


def interval_apply(fn: str, args: Sequence[Interval], precision: int) -> Interval:
    """Apply a named interval operation with outward rounding at ``precision`` digits."""
    ops = IntervalArithmetic(precision)
    args = [ops.coerce(a) for a in args]
    if fn in _UNARY:
        if len(args) != 1:
            raise TypeError(f"{fn} takes one interval, got {len(args)}")
        return getattr(ops, fn)(args[0])
    if fn in _BINARY:
        if len(args) != 2:
            raise TypeError(f"{fn} takes two intervals, got {len(args)}")
        return getattr(ops, fn)(args[0], args[1])
    raise ValueError(f"unknown interval operation {fn!r}")
