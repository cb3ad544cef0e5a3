"""Rigorous enclosures of pi, e, Euler's gamma and Catalan's G.

Each series is summed in scaled integer arithmetic.  Every floor division
loses less than one unit, so a sum of ``k`` such terms is off by fewer than
``k`` units; the discarded tail is bounded separately.  The result is an
integer ``S`` and error ``E`` with ``|S - C*10^W| <= E``.
"""

from __future__ import annotations

import math
from decimal import Decimal
from fractions import Fraction

from .interval import Interval, IntervalArithmetic

GUARD_DIGITS = 12


def _atan_inv(k: int, scale: int) -> tuple[int, int]:
    """scale*atan(1/k) as (value, error bound) for an integer k >= 2."""
    k2 = k * k
    x = scale // k  # == floor(scale / k^(2n+1)) at every step
    total = 0
    n = 0
    while x:
        term = x // (2 * n + 1)
        total += -term if n % 2 else term
        x //= k2
        n += 1
    # one unit per term plus the alternating tail, which is below one unit
    return total, n + 1


def _pi_scaled(scale: int) -> tuple[int, int]:
    a, ea = _atan_inv(5, scale)
    b, eb = _atan_inv(239, scale)
    return 16 * a - 4 * b, 16 * ea + 4 * eb


def _e_scaled(scale: int) -> tuple[int, int]:
    total = 0
    x = scale
    k = 0
    while x:
        total += x
        k += 1
        x //= k  # == floor(scale / k!)
    # the tail sum_{j>=k} scale/j! < 2*scale/k! < 2
    return total, k + 2


def _catalan_series_scaled(scale: int) -> tuple[int, int]:
    """scale * sum 1/((2n+1)^2 C(2n,n)); consecutive terms shrink by more than 4x."""
    total = 0
    n = 0
    binom = 1
    while True:
        term = scale // ((2 * n + 1) ** 2 * binom)
        if term == 0:
            break
        total += term
        n += 1
        binom = binom * 2 * (2 * n - 1) // n
    # remaining terms are each < 1 unit and geometric with ratio < 1/4
    return total, n + 2


def _euler_parts(digits: int) -> tuple[int, int, int, int, int, int]:
    """Brent-McMillan sums for gamma = A/B - log(m) - r, 0 < r < pi*exp(-4m)."""
    m = math.ceil((digits + 6) * math.log(10) / 4) + 1
    scale = 10 ** digits
    m2 = m * m
    a_sum = 0
    b_sum = 0
    k = 0
    power = 1       # m^(2k)
    fact_sq = 1     # (k!)^2
    harmonic = Fraction(0)
    while True:
        b_term = scale * power // fact_sq
        a_term = scale * power * harmonic.numerator // (fact_sq * harmonic.denominator)
        if k > 2 * m and a_term == 0 and b_term == 0:
            break
        a_sum += a_term
        b_sum += b_term
        k += 1
        harmonic += Fraction(1, k)
        power *= m2
        fact_sq *= k * k
    # beyond k > 2m both term sequences shrink by more than 3x per step
    err = k + 2
    return a_sum, err, b_sum, err, m, scale


def _euler_interval(ops: IntervalArithmetic, digits: int) -> Interval:
    a_sum, ea, b_sum, eb, m, scale = _euler_parts(digits)
    a_iv = ops.coerce(Fraction(a_sum - ea, scale)).hull(ops.coerce(Fraction(a_sum + ea, scale)))
    b_iv = ops.coerce(Fraction(b_sum - eb, scale)).hull(ops.coerce(Fraction(b_sum + eb, scale)))
    ratio = ops.div(a_iv, b_iv)
    log_m = ops.log(ops.coerce(m))
    core = ops.sub(ratio, log_m)
    # pi*exp(-4m) <= 10^-(digits+5) by the choice of m
    remainder = ops.coerce(Fraction(1, 10 ** (digits + 5)))
    return Interval(ops.sub(core, remainder).lo, core.hi)


def _scaled_to_interval(ops: IntervalArithmetic, value: int, err: int, scale: int) -> Interval:
    lo = ops.coerce(Fraction(value - err, scale)).lo
    hi = ops.coerce(Fraction(value + err, scale)).hi
    return Interval(lo, hi)


CONSTANT_NAMES = ("pi", "e", "euler", "catalan")


def constant_enclosure(name: str, precision: int) -> Interval:
    """An interval with ``precision``-digit endpoints that contains the named constant."""
    if name not in CONSTANT_NAMES:
        raise ValueError(f"unknown constant {name!r}; expected one of {CONSTANT_NAMES}")
    if precision < 1:
        raise ValueError("precision must be >= 1")
    work = precision + GUARD_DIGITS
    scale = 10 ** work
    ops = IntervalArithmetic(work)
    if name == "pi":
        iv = _scaled_to_interval(ops, *_pi_scaled(scale), scale)
    elif name == "e":
        iv = _scaled_to_interval(ops, *_e_scaled(scale), scale)
    elif name == "euler":
        iv = _euler_interval(ops, work)
    else:
        series = _scaled_to_interval(ops, *_catalan_series_scaled(scale), scale)
        pi = _scaled_to_interval(ops, *_pi_scaled(scale), scale)
        two = ops.coerce(2)
        log_term = ops.log(ops.add(two, ops.sqrt(ops.coerce(3))))
        iv = ops.add(ops.mul(ops.coerce(Fraction(3, 8)), series),
                     ops.mul(ops.div(pi, ops.coerce(8)), log_term))
    out = IntervalArithmetic(precision)
    return Interval(out._down.plus(iv.lo), out._up.plus(iv.hi))


def constant_point(name: str, precision: int) -> Decimal:
    """Midpoint of a tight enclosure, rounded to ``precision`` digits (not certified)."""
    iv = constant_enclosure(name, precision + 5)
    return IntervalArithmetic(precision)._near.plus(iv.midpoint(precision + 5))
