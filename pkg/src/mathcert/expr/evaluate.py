"""High-precision evaluation of expression trees.

Point evaluation runs in a private mpmath context per call, so the working
precision is a local value and concurrent evaluations cannot disturb each
other.  Results are certified by re-evaluating with more guard digits until two
consecutive evaluations agree on the requested digits.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

import mpmath

from ..numeric import BigFloat, Interval, IntervalArithmetic, constant_enclosure
from ..numeric.bigfloat import fraction_to_decimal, mpf_to_fraction
from .nodes import (
    EXTENSION_FUNCTIONS,
    BinOp,
    Call,
    Const,
    Expression,
    Neg,
    Rat,
    Var,
    fold_rational,
    free_variables,
)

GUARD_DIGITS = 20
MAX_DOUBLINGS = 4


class EvaluationError(ArithmeticError):
    """Base class for failures to produce a certified value."""


class EvaluationDomainError(EvaluationError):
    pass


class InstabilityError(EvaluationError):
    pass


class UnboundVariableError(EvaluationError, KeyError):
    pass


class UnsupportedTierError(EvaluationError):
    pass


def _substitute(e: Expression, bindings: Mapping[str, Fraction]) -> Expression:
    if isinstance(e, Var):
        v = bindings[e.name]
        return Rat(abs(v)) if v >= 0 else Neg(Rat(-v))
    if isinstance(e, Neg):
        return Neg(_substitute(e.child, bindings))
    if isinstance(e, BinOp):
        return BinOp(e.op, _substitute(e.left, bindings), _substitute(e.right, bindings))
    if isinstance(e, Call):
        return Call(e.fn, tuple(_substitute(a, bindings) for a in e.args))
    return e


def _exact(e: Expression, bindings) -> Fraction | None:
    if not free_variables(e):
        return fold_rational(e)
    return fold_rational(_substitute(e, bindings))


class _PointEvaluator:
    def __init__(self, digits: int, bindings: Mapping[str, Fraction]):
        self.ctx = mpmath.MPContext()
        self.ctx.dps = digits
        self.bindings = bindings

    def run(self, e: Expression):
        ctx = self.ctx
        if isinstance(e, Rat):
            return ctx.mpf(e.value.numerator) / e.value.denominator
        if isinstance(e, Const):
            return {"pi": ctx.pi, "e": ctx.e, "euler": ctx.euler, "catalan": ctx.catalan}[e.name] + 0
        if isinstance(e, Var):
            v = self.bindings[e.name]
            return ctx.mpf(v.numerator) / v.denominator
        if isinstance(e, Neg):
            return -self.run(e.child)
        if isinstance(e, BinOp):
            return self.binop(e)
        if isinstance(e, Call):
            return self.call(e)
        raise TypeError(f"not an expression node: {e!r}")

    def binop(self, e: BinOp):
        if e.op == "pow":
            return self.power(e)
        a, b = self.run(e.left), self.run(e.right)
        if e.op == "add":
            return a + b
        if e.op == "sub":
            return a - b
        if e.op == "mul":
            return a * b
        if b == 0:
            raise EvaluationDomainError("division by zero")
        return a / b

    def power(self, e: BinOp):
        ctx = self.ctx
        base = self.run(e.left)
        exact_exp = _exact(e.right, self.bindings)
        if exact_exp is not None and exact_exp.denominator == 1:
            n = int(exact_exp)
            if base == 0 and n < 0:
                raise EvaluationDomainError("zero raised to a negative power")
            return ctx.power(base, n)
        exponent = self.run(e.right)
        if base > 0:
            return ctx.exp(exponent * ctx.log(base))
        if base == 0 and exponent > 0:
            return ctx.zero
        raise EvaluationDomainError("non-integer power of a non-positive base")

    def call(self, e: Call):
        ctx = self.ctx
        fn = e.fn
        if fn in EXTENSION_FUNCTIONS:
            raise UnsupportedTierError(f"{fn} is an extension-tier function and is not implemented")
        if fn == "root":
            x = self.run(e.args[0])
            n = _exact(e.args[1], self.bindings)
            if n is None or n.denominator != 1 or n < 2:
                raise EvaluationDomainError("root index must be an integer >= 2")
            n = int(n)
            if x < 0:
                if n % 2 == 0:
                    raise EvaluationDomainError("even root of a negative value")
                return -ctx.root(-x, n)
            return ctx.root(x, n)
        if fn == "gamma":
            exact = _exact(e.args[0], self.bindings)
            if exact is not None and exact <= 0 and exact.denominator == 1:
                raise EvaluationDomainError(f"gamma has a pole at {exact}")
            x = self.run(e.args[0])
            try:
                return ctx.gamma(x)
            except ValueError as exc:
                raise EvaluationDomainError(f"gamma pole: {exc}") from exc
        if fn == "zeta":
            exact = _exact(e.args[0], self.bindings)
            if exact == 1:
                raise EvaluationDomainError("zeta has a pole at 1")
            if exact is not None and exact.denominator == 1 and exact >= 2:
                return ctx.zeta(int(exact))
            x = self.run(e.args[0])
            if x == 1:
                raise EvaluationDomainError("zeta has a pole at 1")
            return ctx.zeta(x)
        x = self.run(e.args[0])
        if fn == "sqrt":
            if x < 0:
                raise EvaluationDomainError("sqrt of a negative value")
            return ctx.sqrt(x)
        if fn == "log":
            if x <= 0:
                raise EvaluationDomainError("log of a non-positive value")
            return ctx.log(x)
        if fn in ("asin", "acos") and abs(x) > 1:
            raise EvaluationDomainError(f"{fn} argument outside [-1, 1]")
        if fn == "tan" and ctx.cos(x) == 0:
            raise EvaluationDomainError("tan at a pole")
        return getattr(ctx, fn)(x)


def _to_fraction(value) -> Fraction:
    return mpf_to_fraction(value)


def evaluate_raw(e: Expression, bindings: Mapping[str, Fraction], digits: int) -> Fraction:
    """One evaluation at ``digits`` working digits, as the exact binary value produced."""
    evaluator = _PointEvaluator(digits, bindings)
    value = evaluator.run(e)
    if not isinstance(value, evaluator.ctx.mpf):
        raise EvaluationDomainError("evaluation left the real line")
    if not evaluator.ctx.isfinite(value):
        raise EvaluationDomainError("non-finite intermediate result")
    return _to_fraction(value)


def _agree(a: Fraction, b: Fraction, digits: int) -> bool:
    if a == b:
        return True
    return abs(a - b) * 10 ** (digits + 1) <= abs(b)


def _normalise_bindings(e: Expression, bindings) -> dict:
    bindings = {k: Fraction(v) for k, v in (bindings or {}).items()}
    missing = free_variables(e) - set(bindings)
    if missing:
        raise UnboundVariableError(f"unbound variables: {sorted(missing)}")
    return bindings


def evaluate(e: Expression, bindings: Mapping[str, Fraction] | None = None,
             target_digits: int = 50) -> BigFloat:
    """Value of ``e`` correct to ``target_digits`` significant digits.

    Evaluates with ``g`` and ``2g`` guard digits (``g`` starts at 20) and
    accepts when the two agree; otherwise doubles ``g``, at most four times.
    """
    if target_digits < 1:
        raise ValueError("target_digits must be >= 1")
    bindings = _normalise_bindings(e, bindings)
    guard = GUARD_DIGITS
    for _ in range(MAX_DOUBLINGS + 1):
        coarse = evaluate_raw(e, bindings, target_digits + guard)
        fine = evaluate_raw(e, bindings, target_digits + 2 * guard)
        if _agree(coarse, fine, target_digits):
            return BigFloat(fraction_to_decimal(fine, target_digits), target_digits)
        guard *= 2
    raise InstabilityError(
        f"no agreement on {target_digits} digits after {MAX_DOUBLINGS} guard doublings "
        f"(last guard {guard // 2} digits)")


# -- interval evaluation ----------------------------------------------------

INTERVAL_FUNCTIONS = frozenset({"sqrt", "root", "exp", "log"})


def evaluate_interval(e: Expression, bindings: Mapping[str, Fraction] | None = None,
                      precision: int = 50) -> Interval:
    """Sound enclosure of ``e`` for trees over literals, constants, + - * / ^,
    sqrt, root, exp and log.  Other functions raise ``NotImplementedError``."""
    bindings = _normalise_bindings(e, bindings)
    ops = IntervalArithmetic(precision)

    def run(node) -> Interval:
        if isinstance(node, Rat):
            return ops.from_rational(node.value)
        if isinstance(node, Const):
            return constant_enclosure(node.name, precision)
        if isinstance(node, Var):
            return ops.from_rational(bindings[node.name])
        if isinstance(node, Neg):
            return ops.neg(run(node.child))
        if isinstance(node, BinOp):
            if node.op == "pow":
                exact_exp = _exact(node.right, bindings)
                base = run(node.left)
                if exact_exp is not None and exact_exp.denominator == 1:
                    return ops.pow_int(base, int(exact_exp))
                return ops.pow(base, run(node.right))
            a, b = run(node.left), run(node.right)
            return getattr(ops, node.op)(a, b)
        if isinstance(node, Call):
            if node.fn not in INTERVAL_FUNCTIONS:
                raise NotImplementedError(f"no interval enclosure for {node.fn}")
            if node.fn == "root":
                n = _exact(node.args[1], bindings)
                if n is None or n.denominator != 1 or n < 2:
                    raise EvaluationDomainError("root index must be an integer >= 2")
                return ops.root(run(node.args[0]), int(n))
            return getattr(ops, node.fn)(run(node.args[0]))
        raise TypeError(f"not an expression node: {node!r}")

    return run(e)
