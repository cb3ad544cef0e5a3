"""Closed-form candidate language: grammar, admissibility policy, evaluation."""

from .admissibility import AdmissibilityPolicy, AdmissibilityReport, Violation, check_admissibility
from .evaluate import (
    EvaluationDomainError,
    EvaluationError,
    InstabilityError,
    UnboundVariableError,
    UnsupportedTierError,
    evaluate,
    evaluate_interval,
)
from .nodes import (
    CORE_FUNCTIONS,
    EXTENSION_FUNCTIONS,
    BinOp,
    Call,
    Const,
    Expression,
    Neg,
    Rat,
    Var,
    free_variables,
    from_json,
    to_json,
)
from .parser import ExpressionSyntaxError, UnknownIdentifierError, parse, render

__all__ = [
    "AdmissibilityPolicy", "AdmissibilityReport", "BinOp", "CORE_FUNCTIONS", "Call", "Const",
    "EXTENSION_FUNCTIONS", "EvaluationDomainError", "EvaluationError", "Expression",
    "ExpressionSyntaxError", "InstabilityError", "Neg", "Rat", "UnboundVariableError",
    "UnknownIdentifierError", "UnsupportedTierError", "Var", "Violation", "check_admissibility",
    "evaluate", "evaluate_interval", "free_variables", "from_json", "parse", "render", "to_json",
]
