"""Dispatch a candidate to the evaluation mode its manifest declares."""

from __future__ import annotations

import json
import time
import warnings
from collections import Counter
from dataclasses import dataclass, field
from decimal import Decimal
from pathlib import Path

from ..constructions import CandidateSchemaError, construction_report, score_against_baseline
from ..expr import ExpressionSyntaxError, parse
from ..ground_truth import verify_ground_truth
from ..report import EvaluationReport, Verdict
from .manifest import ProblemManifest, load_registry

DEFAULT_PRECISION = 120
MAX_CANDIDATE_BYTES = 50_000_000


@dataclass(frozen=True)
class RunOptions:
    precision: int = DEFAULT_PRECISION
    lambda_min: Decimal | None = None
    time_budget: float | None = None

    def as_dict(self) -> dict:
        return {"precision": self.precision, "lambda_min": self.lambda_min, "time_budget": self.time_budget}


class CandidateFormError(ValueError):
    pass


def _read_candidate(m: ProblemManifest, path: Path):
    size = path.stat().st_size
    if size > MAX_CANDIDATE_BYTES:
        raise CandidateFormError(f"candidate file is {size} bytes; limit {MAX_CANDIDATE_BYTES}")
    text = path.read_text(encoding="utf-8")
    if m.mode == "ground_truth_computable":
        if path.suffix == ".json":
            raise CandidateFormError("ground-truth problems take an expression text file, not JSON")
        return parse(text)
    if path.suffix == ".expr":
        raise CandidateFormError("construction problems take a JSON candidate, not an expression")
    try:
        return json.loads(text, parse_float=Decimal)
    except json.JSONDecodeError as exc:
        raise CandidateFormError(f"candidate is not valid JSON: {exc}") from exc


def _dispatch(m: ProblemManifest, candidate, options: RunOptions) -> EvaluationReport:
    if m.mode == "ground_truth_computable":
        return verify_ground_truth(m.ground_truth, candidate, m.policy, options.precision)
    v = m.validator
    if v.evaluate is not None:
        return v.evaluate(candidate, m.validator_params, m.baseline, options.as_dict())
    outcome = v.validate(candidate, m.validator_params)
    if m.mode == "benchmark_best_known":
        return score_against_baseline(outcome, m.baseline)
    return construction_report(outcome)


def run_verification(m: ProblemManifest, candidate_path, options: RunOptions | None = None) -> EvaluationReport:
    """Evaluate one candidate file; every failure shape becomes a verdict."""
    options = options or RunOptions()
    started = time.perf_counter()
    try:
        candidate = _read_candidate(m, Path(candidate_path))
        report = _dispatch(m, candidate, options)
    except ExpressionSyntaxError as exc:
        report = EvaluationReport(Verdict.ERROR, diagnostics=[f"syntax error: {exc}"])
    except (CandidateFormError, CandidateSchemaError) as exc:
        report = EvaluationReport(Verdict.ERROR, diagnostics=[f"malformed candidate: {exc}"])
    except (OSError, UnicodeDecodeError) as exc:
        report = EvaluationReport(Verdict.ERROR, diagnostics=[f"unreadable candidate: {exc}"])
    except RecursionError:
        report = EvaluationReport(Verdict.ERROR, diagnostics=["candidate is nested too deeply"])
    except Exception as exc:  # the verdict vocabulary is closed: nothing escapes as a crash
        report = EvaluationReport(Verdict.ERROR, diagnostics=[f"internal error: {type(exc).__name__}: {exc}"])
    report.problem_id = m.id
    report.mode = m.mode
    report.manifest_hash = m.manifest_hash
    report.duration_s = round(time.perf_counter() - started, 6)
    return report


@dataclass
class BatchResult:
    reports: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    @property
    def summary(self) -> dict:
        counts = Counter(r.verdict.value for r in self.reports)
        return {v.value: counts.get(v.value, 0) for v in Verdict}

    def canonical_json(self) -> str:
        body = {"reports": [json.loads(r.canonical_json()) for r in self.reports],
                "summary": self.summary, "warnings": self.warnings}
        return json.dumps(body, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def candidate_problem_id(path: Path) -> str:
    return path.name.split(".", 1)[0]


def batch_run(manifest_dir, candidates_dir, options: RunOptions | None = None) -> BatchResult:
    """One report per manifest that has a candidate, in problem-id order.

    Candidates are matched by the file-name part before the first dot; when
    two files claim one id, the later one in sorted order wins.
    """
    manifests = {m.id: m for m in load_registry(manifest_dir)}
    result = BatchResult()
    chosen: dict[str, Path] = {}
    for path in sorted(p for p in Path(candidates_dir).iterdir() if p.is_file()):
        pid = candidate_problem_id(path)
        if pid not in manifests:
            result.warnings.append(f"no manifest for candidate {path.name}")
            continue
        if pid in chosen:
            result.warnings.append(f"duplicate candidates for {pid}: {path.name} replaces {chosen[pid].name}")
        chosen[pid] = path
    for msg in result.warnings:
        warnings.warn(msg, stacklevel=2)
    for pid in sorted(chosen):
        result.reports.append(run_verification(manifests[pid], chosen[pid], options))
    return result
