"""Structural admissibility checks for closed-form candidates.

Nothing here evaluates numerically; literal subtrees are folded exactly where
a rule needs to know an argument's value (gamma poles, zeta arguments, root
indices).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .nodes import (
    ALL_FUNCTIONS,
    CORE_FUNCTIONS,
    EXTENSION_FUNCTIONS,
    BinOp,
    Call,
    Expression,
    Rat,
    fold_rational,
    walk,
)

RULES = {
    "literal-digit-budget": "rational literal exceeds the digit budget",
    "exponent-magnitude": "integer exponent exceeds the allowed magnitude",
    "function-not-allowed": "function is not in the allowed set",
    "unsupported-tier": "function belongs to the extension tier, which is not implemented",
    "unknown-function": "function is not defined",
    "arity": "wrong number of arguments",
    "gamma-argument": "gamma needs a rational argument that is not a pole",
    "zeta-argument": "zeta needs an integer argument >= 2",
    "root-index": "root needs an integer index >= 2",
}


@dataclass(frozen=True)
class AdmissibilityPolicy:
    allowed_functions: frozenset = frozenset(CORE_FUNCTIONS)
    max_literal_digits: int = 6
    max_exponent: int = 64

    @classmethod
    def from_overrides(cls, overrides: dict | None) -> "AdmissibilityPolicy":
        if not overrides:
            return cls()
        kwargs = {}
        if "max_literal_digits" in overrides:
            kwargs["max_literal_digits"] = int(overrides["max_literal_digits"])
        if "max_exponent" in overrides:
            kwargs["max_exponent"] = int(overrides["max_exponent"])
        allowed = set(CORE_FUNCTIONS)
        if overrides.get("function_tier") == "extension":
            allowed |= set(EXTENSION_FUNCTIONS)
        if "allowed_functions" in overrides:
            allowed = set(overrides["allowed_functions"])
        kwargs["allowed_functions"] = frozenset(allowed)
        return cls(**kwargs)


@dataclass(frozen=True)
class Violation:
    path: str
    rule: str
    message: str


@dataclass(frozen=True)
class AdmissibilityReport:
    violations: tuple = field(default_factory=tuple)

    @property
    def admissible(self) -> bool:
        return not self.violations

    @property
    def verdict(self) -> str:
        return "admissible" if self.admissible else "inadmissible"

    def rules(self) -> set[str]:
        return {v.rule for v in self.violations}

    def to_dict(self) -> dict:
        return {"verdict": self.verdict,
                "violations": [{"path": v.path, "rule": v.rule, "message": v.message}
                               for v in self.violations]}


def _digits(n: int) -> int:
    return len(str(abs(n)))


def check_admissibility(e: Expression, policy: AdmissibilityPolicy | None = None) -> AdmissibilityReport:
    """Every violation in the tree, in pre-order; an empty list means admissible."""
    policy = policy or AdmissibilityPolicy()
    out: list[Violation] = []

    def add(path, rule, detail):
        out.append(Violation(path, rule, f"{RULES[rule]}: {detail}"))

    for path, node in walk(e):
        if isinstance(node, Rat):
            num, den = node.value.numerator, node.value.denominator
            budget = policy.max_literal_digits
            if _digits(num) > budget or _digits(den) > budget:
                add(path, "literal-digit-budget",
                    f"{num}/{den} has {_digits(num)}+{_digits(den)} digits, budget {budget}+{budget}")
        elif isinstance(node, BinOp) and node.op == "pow":
            exponent = fold_rational(node.right, max_exponent=policy.max_exponent)
            if exponent is not None and exponent.denominator == 1 and abs(exponent) > policy.max_exponent:
                add(path + ".right", "exponent-magnitude",
                    f"|{exponent}| > {policy.max_exponent}")
        elif isinstance(node, Call):
            _check_call(path, node, policy, add)
    return AdmissibilityReport(tuple(out))


def _check_call(path, node: Call, policy: AdmissibilityPolicy, add):
    fn = node.fn
    if fn not in ALL_FUNCTIONS:
        add(path, "unknown-function", fn)
        return
    if fn in EXTENSION_FUNCTIONS:
        add(path, "unsupported-tier", fn)
    elif fn not in policy.allowed_functions:
        add(path, "function-not-allowed", fn)
    if len(node.args) != ALL_FUNCTIONS[fn]:
        add(path, "arity", f"{fn} takes {ALL_FUNCTIONS[fn]}, got {len(node.args)}")
        return
    if fn == "gamma":
        v = fold_rational(node.args[0], policy.max_exponent)
        if v is None:
            add(path + ".args[0]", "gamma-argument", "argument is not a rational constant")
        elif v <= 0 and v.denominator == 1:
            add(path + ".args[0]", "gamma-argument", f"gamma has a pole at {v}")
    elif fn == "zeta":
        v = fold_rational(node.args[0], policy.max_exponent)
        if v is None or v.denominator != 1 or v < 2:
            shown = "a non-rational argument" if v is None else str(v)
            add(path + ".args[0]", "zeta-argument", f"got {shown}")
    elif fn == "root":
        v = fold_rational(node.args[1], policy.max_exponent)
        if v is None or v.denominator != 1 or v < 2:
            add(path + ".args[1]", "root-index", f"got {v if v is not None else 'a non-literal index'}")
        elif v > policy.max_exponent:
            add(path + ".args[1]", "exponent-magnitude", f"root index {v} > {policy.max_exponent}")


