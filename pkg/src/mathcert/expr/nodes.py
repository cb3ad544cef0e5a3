"""Expression trees for closed-form candidates.

There is deliberately no node for integrals, sums, limits or implicit
definitions: a tree built from these classes can only describe a finite
combination of literals, constants and whitelisted calls.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

CONSTANTS = frozenset({"pi", "e", "euler", "catalan"})
BINARY_OPS = ("add", "sub", "mul", "div", "pow")

# name -> arity
CORE_FUNCTIONS = {
    "sqrt": 1, "root": 2, "exp": 1, "log": 1,
    "sin": 1, "cos": 1, "tan": 1, "asin": 1, "acos": 1, "atan": 1,
    "sinh": 1, "cosh": 1, "tanh": 1,
    "gamma": 1, "zeta": 1,
}
# declared so that candidates using them get a clear answer, but not evaluated
EXTENSION_FUNCTIONS = {
    "polylog": 2, "ellipk": 1, "ellipe": 1,
    "hyp1f1": 3, "hyp2f1": 4, "dirichlet_beta": 1,
}
ALL_FUNCTIONS = {**CORE_FUNCTIONS, **EXTENSION_FUNCTIONS}


def function_tier(name: str) -> str | None:
    if name in CORE_FUNCTIONS:
        return "core"
    if name in EXTENSION_FUNCTIONS:
        return "extension"
    return None


@dataclass(frozen=True)
class Rat:
    value: Fraction

    def __post_init__(self):
        if not isinstance(self.value, Fraction):
            object.__setattr__(self, "value", Fraction(self.value))
        if self.value < 0:
            raise ValueError("rational literals are non-negative; use Neg for signs")


@dataclass(frozen=True)
class Const:
    name: str

    def __post_init__(self):
        if self.name not in CONSTANTS:
            raise ValueError(f"unknown constant {self.name!r}")


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    child: "Expression"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expression"
    right: "Expression"

    def __post_init__(self):
        if self.op not in BINARY_OPS:
            raise ValueError(f"unknown operator {self.op!r}")


@dataclass(frozen=True)
class Call:
    fn: str
    args: tuple

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))


Expression = Union[Rat, Const, Var, Neg, BinOp, Call]


def children(e: Expression) -> tuple:
    if isinstance(e, Neg):
        return (e.child,)
    if isinstance(e, BinOp):
        return (e.left, e.right)
    if isinstance(e, Call):
        return e.args
    return ()


def walk(e: Expression, path: str = "$") -> Iterator[tuple[str, Expression]]:
    """Pre-order traversal yielding (path, node)."""
    yield path, e
    if isinstance(e, Neg):
        yield from walk(e.child, path + ".child")
    elif isinstance(e, BinOp):
        yield from walk(e.left, path + ".left")
        yield from walk(e.right, path + ".right")
    elif isinstance(e, Call):
        for i, a in enumerate(e.args):
            yield from walk(a, f"{path}.args[{i}]")


def free_variables(e: Expression) -> frozenset[str]:
    return frozenset(n.name for _, n in walk(e) if isinstance(n, Var))


def to_json(e: Expression) -> dict:
    """Canonical structured form: one object per node with a ``kind`` tag."""
    if isinstance(e, Rat):
        return {"kind": "rational", "num": e.value.numerator, "den": e.value.denominator}
    if isinstance(e, Const):
        return {"kind": "const", "name": e.name}
    if isinstance(e, Var):
        return {"kind": "var", "name": e.name}
    if isinstance(e, Neg):
        return {"kind": "neg", "child": to_json(e.child)}
    if isinstance(e, BinOp):
        return {"kind": "binary", "op": e.op, "left": to_json(e.left), "right": to_json(e.right)}
    if isinstance(e, Call):
        return {"kind": "call", "fn": e.fn, "args": [to_json(a) for a in e.args]}
    raise TypeError(f"not an expression node: {e!r}")


def from_json(obj) -> Expression:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ValueError(f"expected an expression object with a 'kind', got {obj!r}")
    kind = obj["kind"]
    fields = set(obj) - {"kind"}
    expected = {
        "rational": {"num", "den"}, "const": {"name"}, "var": {"name"},
        "neg": {"child"}, "binary": {"op", "left", "right"}, "call": {"fn", "args"},
    }.get(kind)
    if expected is None:
        raise ValueError(f"unknown node kind {kind!r}")
    if fields != expected:
        raise ValueError(f"{kind} node needs fields {sorted(expected)}, got {sorted(fields)}")
    if kind == "rational":
        num, den = obj["num"], obj["den"]
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in (num, den)) or den <= 0:
            raise ValueError("rational node needs integer num and positive integer den")
        return Rat(Fraction(num, den))
    if kind == "const":
        return Const(obj["name"])
    if kind == "var":
        if not isinstance(obj["name"], str):
            raise ValueError("variable name must be a string")
        return Var(obj["name"])
    if kind == "neg":
        return Neg(from_json(obj["child"]))
    if kind == "binary":
        return BinOp(obj["op"], from_json(obj["left"]), from_json(obj["right"]))
    if not isinstance(obj["args"], list):
        raise ValueError("call args must be a list")
    return Call(obj["fn"], tuple(from_json(a) for a in obj["args"]))


def fold_rational(e: Expression, max_exponent: int = 64) -> Fraction | None:
    """Exact value of a subtree built only from literals and field operations.

    Returns None when the subtree contains anything else (or divides by zero).
    """
    if isinstance(e, Rat):
        return e.value
    if isinstance(e, Neg):
        v = fold_rational(e.child, max_exponent)
        return None if v is None else -v
    if isinstance(e, BinOp):
        a = fold_rational(e.left, max_exponent)
        b = fold_rational(e.right, max_exponent)
        if a is None or b is None:
            return None
        if e.op == "add":
            return a + b
        if e.op == "sub":
            return a - b
        if e.op == "mul":
            return a * b
        if e.op == "div":
            return None if b == 0 else a / b
        if b.denominator != 1 or abs(b) > max_exponent or (a == 0 and b < 0):
            return None
        return a ** int(b)
    return None
