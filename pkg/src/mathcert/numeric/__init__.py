"""Exact rationals, explicit-precision decimals, and sound interval arithmetic."""

from .bigfloat import (
    BigFloat,
    Rational,
    format_scientific,
    parse_rational,
    rational_to_bigfloat,
)
from .constants import CONSTANT_NAMES, constant_enclosure
from .interval import Interval, IntervalArithmetic, IntervalDomainError, interval_apply

__all__ = [
    "BigFloat",
    "CONSTANT_NAMES",
    "Interval",
    "IntervalArithmetic",
    "IntervalDomainError",
    "Rational",
    "constant_enclosure",
    "format_scientific",
    "interval_apply",
    "parse_rational",
    "rational_to_bigfloat",
]
