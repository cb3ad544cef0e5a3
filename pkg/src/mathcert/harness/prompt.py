"""Human-readable problem statements.

Reference values and baselines are cut to five significant figures before
they reach the text, so a prompt never leaks enough digits to fit a
hard-coded constant.
"""

from __future__ import annotations

from decimal import ROUND_DOWN, Context, Decimal
from fractions import Fraction

from ..expr.nodes import CONSTANTS
from .manifest import ProblemManifest

PROMPT_SIG_FIGS = 5
ELLIPSIS = "…"


def truncate_significant(value, figures: int = PROMPT_SIG_FIGS) -> str:
    """Truncate (never round) to ``figures`` significant digits; mark dropped digits with an ellipsis."""
    if isinstance(value, Fraction):
        d = Context(prec=figures + 10).divide(Decimal(value.numerator), Decimal(value.denominator))
        exact = Fraction(d) == value
    else:
        d = Decimal(str(value))
        exact = True
    cut = Context(prec=figures, rounding=ROUND_DOWN).plus(d)
    dropped = (cut != d) or not exact
    if cut == 0:
        text = "0"
    elif -8 <= cut.adjusted() < figures:
        text = format(cut, "f")
    else:
        text = format(cut, "e")
    return text + (ELLIPSIS if dropped else "")


def _allowed(m: ProblemManifest) -> str:
    return ", ".join(sorted(m.policy.allowed_functions))


_FORMATS = {
    "dts": 'a JSON object {"n": n, "k": k, "rows": [[0, ...], ...]} with n rows of k+1 integers',
    "hadamard": 'a JSON object {"order": n, "matrix": [[1, -1, ...], ...]} with entries +1 or -1',
    "mols": 'a JSON object {"order": n, "squares": [[[...], ...], ...]} of n x n arrays over 0..n-1',
    "kakeya_thin_triangle": 'a JSON object {"intercepts": ["0.0", ...]} with one decimal string per slope',
    "ramsey_gnnw": ('a JSON object {"correction_coeffs": [c1, ...], "M": {"breakpoints": [...], '
                    '"values": [...]}, "Y": {...}, "notes": "..."}'),
}


def render_prompt(m: ProblemManifest) -> str:
    lines = [m.title, "",
             f"Domain: {m.domain} | Output type: {m.output_type} | Mode: {m.mode} | "
             f"Solvability: {m.solvability}", ""]
    if m.statement:
        lines += [m.statement.strip(), ""]

    gt = m.ground_truth
    if gt is not None:
        if gt.kind == "constant":
            lines.append(f"The value is approximately {truncate_significant(gt.points[0].reference.digits)}")
        else:
            lines.append("Reference values at sample points:")
            for p in gt.points:
                args = ", ".join(f"{k}={v}" for k, v in p.bindings)
                lines.append(f"  ({args}) -> approximately {truncate_significant(p.reference.digits)}")
        lines += ["",
                  "Submit one closed-form expression as plain text. Allowed: integers and ratios of "
                  f"integers (at most {m.policy.max_literal_digits} digits each), the constants "
                  f"{', '.join(sorted(CONSTANTS))}, + - * / ^, parentheses and the functions "
                  f"{_allowed(m)}." + (f" Variables: {', '.join(sorted(gt.variables))}." if gt.variables else ""),
                  "Decimal literals, integrals, series, limits and numerical solvers are not allowed."]

    if m.baseline is not None:
        b = m.baseline
        metric = m.raw["baseline"].get("metric", "objective")
        lines += ["", "Current state of the art:",
                  f"  Metric: {metric}",
                  f"  Best known value: {truncate_significant(b.value)}",
                  f"  Direction: {b.direction}"]
        if b.source:
            lines.append(f"  Source: {b.source}")
        lines.append("A candidate passes only if it strictly improves on the best known value.")

    if m.validator is not None:
        fmt = m.raw.get("output_format") or _FORMATS.get(m.validator.id, "a JSON object")
        lines += ["", f"Required output: {fmt}."]
    return "\n".join(lines).rstrip() + "\n"
