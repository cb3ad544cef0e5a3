"""Decimal floating-point values that carry their own precision.

Every producing operation takes the digit count as an argument; nothing here
reads or writes the ambient ``decimal`` context.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import (
    ROUND_CEILING,
    ROUND_FLOOR,
    ROUND_HALF_EVEN,
    Context,
    Decimal,
    InvalidOperation,
)
from fractions import Fraction

Rational = Fraction

EMAX = 999_999_999
EMIN = -999_999_999


def make_context(precision: int, rounding: str = ROUND_HALF_EVEN) -> Context:
    if precision < 1:
        raise ValueError(f"precision must be >= 1, got {precision}")
    return Context(prec=precision, rounding=rounding, Emax=EMAX, Emin=EMIN,
                   traps=[InvalidOperation])


def decimal_to_fraction(d: Decimal) -> Fraction:
    return Fraction(d)


def fraction_to_decimal(r: Fraction, precision: int, rounding: str = ROUND_HALF_EVEN) -> Decimal:
    """``r`` rounded to ``precision`` significant digits in the given direction."""
    ctx = make_context(precision, rounding)
    return ctx.divide(Decimal(r.numerator), Decimal(r.denominator))


def parse_rational(text) -> Fraction:
    """Parse a decimal string, integer, ``p/q`` string or Decimal into an exact rational.

    Binary floats are rejected: they would silently import representation error.
    """
    if isinstance(text, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, Decimal):
        if not text.is_finite():
            raise ValueError(f"non-finite value {text}")
        return Fraction(text)
    if isinstance(text, float):
        raise TypeError("binary floats are not accepted; pass a decimal string")
    if isinstance(text, str):
        s = text.strip()
        try:
            if "/" in s:
                return Fraction(s)
            d = Decimal(s)
        except (ValueError, InvalidOperation, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational literal: {text!r}") from exc
        if not d.is_finite():
            raise ValueError(f"non-finite value {text!r}")
        return Fraction(d)
    raise TypeError(f"cannot interpret {type(text).__name__} as a rational")


def format_scientific(value: Decimal, precision: int) -> str:
    """Render as ``[-]d.ddd...e+k`` with exactly ``precision`` significant digits."""
    ctx = make_context(precision, ROUND_HALF_EVEN)
    v = ctx.plus(value)
    sign, digits, exponent = v.as_tuple()
    if not any(digits):
        body = "0" + ("." + "0" * (precision - 1) if precision > 1 else "")
        return ("-" if sign else "") + body + "e+0"
    digits = list(digits)
    # strip leading zeros (Decimal tuples never carry them, but be safe)
    while digits and digits[0] == 0:
        digits.pop(0)
    adjusted = exponent + len(digits) - 1
    digits = (digits + [0] * precision)[:precision]
    mantissa = str(digits[0])
    if precision > 1:
        mantissa += "." + "".join(str(d) for d in digits[1:])
    exp_sign = "+" if adjusted >= 0 else "-"
    return f"{'-' if sign else ''}{mantissa}e{exp_sign}{abs(adjusted)}"


@dataclass(frozen=True)
class BigFloat:
    """A decimal value together with the count of significant digits it claims."""

    value: Decimal
    precision: int

    def __post_init__(self):
        if self.precision < 1:
            raise ValueError("precision must be positive")
        if not isinstance(self.value, Decimal) or not self.value.is_finite():
            raise ValueError(f"BigFloat needs a finite Decimal, got {self.value!r}")

    @classmethod
    def parse(cls, text: str, precision: int | None = None) -> "BigFloat":
        d = Decimal(text)
        if precision is None:
            precision = max(1, len(d.as_tuple().digits))
        return cls(make_context(precision).plus(d), precision)

    def render(self, precision: int | None = None) -> str:
        return format_scientific(self.value, precision or self.precision)

    def to_fraction(self) -> Fraction:
        return Fraction(self.value)

    def is_zero(self) -> bool:
        return self.value.is_zero()

    def __str__(self):
        return self.render()

    def __float__(self):
        return float(self.value)


def mpf_to_fraction(value) -> Fraction:
    """Exact value of an mpmath ``mpf``.  ``man_exp`` drops the sign, so read ``_mpf_``."""
    sign, man, exp, _ = value._mpf_
    man = -int(man) if sign else int(man)
    exp = int(exp)
    return Fraction(man * 2 ** exp) if exp >= 0 else Fraction(man, 2 ** -exp)


def rational_to_bigfloat(r: Fraction, precision: int) -> BigFloat:
    """Correctly rounded (half-even) decimal approximation of ``r``."""
    r = Fraction(r)
    return BigFloat(fraction_to_decimal(r, precision), precision)


def round_directed(r: Fraction, precision: int) -> tuple[Decimal, Decimal]:
    """Decimal bracket ``lo <= r <= hi`` at ``precision`` digits."""
    return (fraction_to_decimal(r, precision, ROUND_FLOOR),
            fraction_to_decimal(r, precision, ROUND_CEILING))
