import random
from decimal import Decimal
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mathcert.numeric import (
    BigFloat,
    Interval,
    IntervalArithmetic,
    IntervalDomainError,
    constant_enclosure,
    interval_apply,
    parse_rational,
    rational_to_bigfloat,
)

from conftest import gauss_legendre_pi


def test_pi_enclosure_example():
    iv = constant_enclosure("pi", 10)
    assert iv.contains(Decimal("3.141592653"))
    assert iv.width <= Decimal("1e-9")


def test_pi_enclosure_brackets_oracle_tightly():
    oracle = Fraction(gauss_legendre_pi(120))
    iv = constant_enclosure("pi", 100)
    # the oracle itself is accurate to ~1e-130, far inside the enclosure's width
    assert Fraction(iv.lo) - Fraction(1, 10 ** 125) <= oracle <= Fraction(iv.hi) + Fraction(1, 10 ** 125)
    assert iv.width <= Decimal("1e-98")


def test_coarse_precision_still_contains():
    iv = constant_enclosure("e", 1)
    assert iv.contains(Decimal("2.7"))
    assert iv.width <= 1


@pytest.mark.parametrize("name,oracle", [
    ("euler", lambda: mpmath.euler), ("catalan", lambda: mpmath.catalan),
    ("e", lambda: mpmath.e), ("pi", lambda: mpmath.pi)])
@pytest.mark.parametrize("precision", [5, 30, 80])
def test_constants_against_mpmath(name, oracle, precision):
    with mpmath.workdps(precision + 40):
        ref = Fraction(mpmath.nstr(oracle(), precision + 35, strip_zeros=False))
    iv = constant_enclosure(name, precision)
    assert Fraction(iv.lo) <= ref <= Fraction(iv.hi)
    assert Fraction(iv.width) <= abs(ref) * Fraction(10) ** (2 - precision)


def test_euler_prefix():
    assert constant_enclosure("euler", 30).contains(Decimal("0.577215664901532860606512090082"))


def test_interval_examples():
    p = 30
    one = interval_apply("exp", [Interval.point(0)], p)
    assert one.contains(1) and 0 < one.width <= Decimal(10) ** (1 - p)
    assert interval_apply("log", [Interval.point(1)], p).contains(0)
    prod = interval_apply("mul", [Interval(Decimal(1), Decimal(2)), Interval(Decimal(-3), Decimal(4))], p)
    assert prod.lo <= -6 and prod.hi >= 8


def test_interval_domain_errors():
    ops = IntervalArithmetic(20)
    with pytest.raises(IntervalDomainError):
        ops.log(Interval(Decimal(-1), Decimal(2)))
    with pytest.raises(IntervalDomainError):
        ops.div(ops.from_rational(1), Interval(Decimal(-1), Decimal(1)))
    with pytest.raises(ValueError):
        Interval(Decimal(2), Decimal(1))


@pytest.mark.parametrize("r,p,expected", [
    (Fraction(1, 3), 5, "0.33333"),
    (Fraction(355, 113), 9, "3.14159292"),
    (Fraction(0), 50, "0"),
])
def test_rational_to_bigfloat_examples(r, p, expected):
    assert rational_to_bigfloat(r, p).value == Decimal(expected)


def test_rational_parsing():
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational("-0.125") == Fraction(-1, 8)
    with pytest.raises((ValueError, ZeroDivisionError)):
        parse_rational("1/0")


def test_rational_rounding_bound():
    rng = random.Random(1)
    for _ in range(1000):
        r = Fraction(rng.randint(-10 ** 40, 10 ** 40), rng.randint(1, 10 ** 40))
        if r == 0:
            continue
        p = rng.randint(5, 200)
        err = abs(rational_to_bigfloat(r, p).to_fraction() - r)
        assert err <= Fraction(10) ** (1 - p) * abs(r)


@given(st.fractions(min_value=-10 ** 6, max_value=10 ** 6, max_denominator=10 ** 9), st.integers(5, 60))
def test_render_round_trip(r, p):
    x = rational_to_bigfloat(r, p)
    back = BigFloat.parse(x.render(p), p)
    assert back.value == x.value


POINT_DPS = 200
SLACK = mpmath.mpf(10) ** -180


def _mp(x) -> mpmath.mpf:
    return mpmath.mpf(x.numerator) / x.denominator if isinstance(x, Fraction) else mpmath.mpf(str(x))


def _image(op, a, b):
    return {"add": lambda: a + b, "sub": lambda: a - b, "mul": lambda: a * b, "div": lambda: a / b,
            "neg": lambda: -a, "exp": lambda: mpmath.exp(a), "log": lambda: mpmath.log(a),
            "pow": lambda: mpmath.power(a, b)}[op]()


def _random_leaf(rng, ops):
    a = Fraction(rng.randint(-2000, 2000), rng.randint(1, 1000))
    w = Fraction(rng.randint(0, 100), rng.randint(1, 1000))
    iv = ops.from_rational(a).hull(ops.from_rational(a + w))
    pts = [_mp(a + w * Fraction(rng.randint(0, 100), 100)) for _ in range(10)]
    return iv, pts


def containment_fuzz(chains: int = 1000, seed: int = 7) -> tuple[int, int]:
    """Random chains of depth <= 8, each followed at 10 sampled inputs in 200-digit arithmetic.

    Returns (points checked, points outside their enclosure).
    """
    rng = random.Random(seed)
    escapes = checked = 0
    with mpmath.workdps(POINT_DPS):
        for _ in range(chains):
            p = rng.choice([15, 30, 50])
            ops = IntervalArithmetic(p)
            iv, points = _random_leaf(rng, ops)
            for _depth in range(rng.randint(1, 8)):
                op = rng.choice(["add", "sub", "mul", "div", "neg", "exp", "log", "pow"])
                other, others = _random_leaf(rng, ops)
                if op == "exp" and iv.hi > 50:
                    continue
                if op == "pow" and (iv.lo <= 0 or iv.hi > 10 ** 6 or abs(other.lo) > 4 or abs(other.hi) > 4):
                    continue
                try:
                    new = interval_apply(op, [iv] if op in ("neg", "exp", "log") else [iv, other], p)
                except IntervalDomainError:
                    break
                if max(abs(new.lo), abs(new.hi)) > 10 ** 30:
                    break
                points = [_image(op, x, y) for x, y in zip(points, others)]
                iv = new
                lo, hi = _mp(iv.lo), _mp(iv.hi)
                for x in points:
                    checked += 1
                    slack = SLACK * max(1, abs(x))
                    if not lo - slack <= x <= hi + slack:
                        escapes += 1
    return checked, escapes


def test_interval_containment_fuzz():
    checked, escapes = containment_fuzz()
    assert checked > 20000
    assert escapes == 0


@given(st.fractions(min_value=-20, max_value=20, max_denominator=1000),
       st.fractions(min_value=0, max_value=5, max_denominator=1000),
       st.fractions(min_value=0, max_value=1, max_denominator=1000))
@settings(max_examples=200)
def test_exp_outward_monotone(a, w, shrink):
    ops = IntervalArithmetic(30)
    big = ops.from_rational(a).hull(ops.from_rational(a + w))
    inner_lo = a + w * shrink / 2
    small = ops.from_rational(inner_lo).hull(ops.from_rational(a + w - w * shrink / 2))
    outer, inner = ops.exp(big), ops.exp(small)
    assert outer.lo <= inner.lo and inner.hi <= outer.hi


@given(st.fractions(min_value=Fraction(1, 1000), max_value=1000, max_denominator=1000),
       st.fractions(min_value=0, max_value=5, max_denominator=1000))
@settings(max_examples=200)
def test_log_outward_monotone(a, w):
    ops = IntervalArithmetic(30)
    big = ops.from_rational(a).hull(ops.from_rational(a + w))
    small = ops.from_rational(a + w / 3).hull(ops.from_rational(a + w / 2))
    outer, inner = ops.log(big), ops.log(small)
    assert outer.lo <= inner.lo and inner.hi <= outer.hi


@given(st.fractions(min_value=0, max_value=3, max_denominator=997))
def test_x_log_x_encloses(x):
    ops = IntervalArithmetic(40)
    iv = ops.x_log_x(ops.from_rational(x))
    with mpmath.workdps(80):
        xf = mpmath.mpf(x.numerator) / x.denominator
        v = xf * mpmath.log(xf) if x else mpmath.mpf(0)
        assert mpmath.mpf(str(iv.lo)) <= v <= mpmath.mpf(str(iv.hi))


def test_x_log_x_range_covers_minimum():
    ops = IntervalArithmetic(30)
    iv = ops.x_log_x(Interval(Decimal("0.2"), Decimal("0.5")))
    with mpmath.workdps(50):
        minimum = -1 / mpmath.e
        assert mpmath.mpf(str(iv.lo)) <= minimum < mpmath.mpf(str(iv.lo)) + mpmath.mpf("1e-25")
