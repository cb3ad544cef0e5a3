"""Evaluation reports shared by every mode."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from enum import Enum
from fractions import Fraction

from . import __version__
from .numeric.bigfloat import format_scientific, fraction_to_decimal


class Verdict(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    INADMISSIBLE = "INADMISSIBLE"
    UNDECIDED = "UNDECIDED"
    ERROR = "ERROR"

    def __str__(self):
        return self.value


def render_exact(r: Fraction, digits: int = 20) -> str:
    """Scientific rendering of an exact rational at ``digits`` significant digits."""
    return format_scientific(fraction_to_decimal(Fraction(r), digits + 2), digits)


@dataclass
class EvaluationReport:
    verdict: Verdict
    problem_id: str = ""
    mode: str = ""
    matched_digits: int | None = None
    required_digits: int | None = None
    point_matches: list = field(default_factory=list)
    metric: str | None = None
    baseline: str | None = None
    relative_improvement: str | None = None
    certified_margin: str | None = None
    diagnostics: list = field(default_factory=list)
    details: dict = field(default_factory=dict)
    duration_s: float | None = None
    engine_version: str = __version__
    manifest_hash: str | None = None

    def __post_init__(self):
        self.verdict = Verdict(self.verdict)

    @property
    def passed(self) -> bool:
        return self.verdict is Verdict.PASS

    def to_dict(self, include_duration: bool = True) -> dict:
        d = asdict(self)
        d["verdict"] = self.verdict.value
        if not include_duration:
            d.pop("duration_s")
        return d

    def canonical_json(self) -> str:
        """Deterministic serialization: sorted keys, no duration."""
        return json.dumps(self.to_dict(include_duration=False), sort_keys=True,
                          separators=(",", ":"), ensure_ascii=True)

    def to_text(self) -> str:
        lines = [f"{self.problem_id or '<candidate>'}: {self.verdict.value}"]
        for label, value in (("mode", self.mode), ("matched digits", self.matched_digits),
                             ("required digits", self.required_digits), ("metric", self.metric),
                             ("baseline", self.baseline),
                             ("relative improvement", self.relative_improvement),
                             ("certified margin", self.certified_margin)):
            if value not in (None, ""):
                lines.append(f"  {label}: {value}")
        for d in self.diagnostics:
            lines.append(f"  - {d}")
        return "\n".join(lines)
