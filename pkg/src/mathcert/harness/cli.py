"""Command-line entry point."""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from decimal import Decimal, InvalidOperation
from pathlib import Path

from ..expr import ExpressionSyntaxError, check_admissibility, parse
from ..report import Verdict
from .manifest import ManifestError, load_manifest, load_registry
from .prompt import render_prompt
from .runner import DEFAULT_PRECISION, RunOptions, batch_run, run_verification

EXIT_CODES = {Verdict.PASS: 0, Verdict.FAIL: 1, Verdict.INADMISSIBLE: 2, Verdict.UNDECIDED: 3, Verdict.ERROR: 4}


def exit_code(verdicts) -> int:
    """ERROR dominates, then FAIL, INADMISSIBLE, UNDECIDED; all PASS (or nothing) is 0."""
    verdicts = set(verdicts)
    for v in (Verdict.ERROR, Verdict.FAIL, Verdict.INADMISSIBLE, Verdict.UNDECIDED):
        if v in verdicts:
            return EXIT_CODES[v]
    return 0


def _decimal(text: str) -> Decimal:
    try:
        d = Decimal(text)
    except InvalidOperation:
        raise argparse.ArgumentTypeError(f"not a decimal number: {text!r}") from None
    if not d.is_finite() or not 0 < d < 1:
        raise argparse.ArgumentTypeError("lambda-min must lie in (0, 1)")
    return d


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=int, default=DEFAULT_PRECISION,
                        help="working digits for closed-form evaluation (default %(default)s)")
    common.add_argument("--lambda-min", type=_decimal, default=None,
                        help="lower end of the lambda range for Ramsey certificates")
    common.add_argument("--report", type=Path, default=None, help="write the structured report here")
    common.add_argument("--format", choices=("json", "text"), default="text")

    p = argparse.ArgumentParser(prog="mathcert", description="Verify candidate solutions to math problems.")
    sub = p.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", parents=[common], help="check one candidate against one manifest")
    v.add_argument("manifest", type=Path)
    v.add_argument("candidate", type=Path)
    b = sub.add_parser("batch", parents=[common], help="check every matching candidate in a directory")
    b.add_argument("manifest_dir", type=Path)
    b.add_argument("candidate_dir", type=Path)
    c = sub.add_parser("check-admissible", parents=[common], help="structural check of an expression file")
    c.add_argument("expr_file", type=Path)
    r = sub.add_parser("render-prompt", parents=[common], help="print the problem statement")
    r.add_argument("manifest", type=Path)
    ls = sub.add_parser("list", parents=[common], help="list the manifests in a directory")
    ls.add_argument("manifest_dir", type=Path)
    return p


def _emit(args, payload: dict, text: str):
    out = json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) if args.format == "json" else text
    print(out)
    if args.report is not None:
        args.report.write_text(json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=True) + "\n",
                               encoding="utf-8")


def _options(args) -> RunOptions:
    return RunOptions(precision=args.precision, lambda_min=args.lambda_min)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _run(args)
    except ManifestError as exc:
        print(f"manifest error: {exc}", file=sys.stderr)
        return EXIT_CODES[Verdict.ERROR]
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CODES[Verdict.ERROR]


def _run(args) -> int:
    if args.command == "verify":
        m = load_manifest(args.manifest)
        report = run_verification(m, args.candidate, _options(args))
        _emit(args, report.to_dict(), report.to_text())
        return exit_code([report.verdict])

    if args.command == "batch":
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            result = batch_run(args.manifest_dir, args.candidate_dir, _options(args))
        for w in result.warnings:
            print(f"warning: {w}", file=sys.stderr)
        payload = json.loads(result.canonical_json())
        text = "\n".join([r.to_text() for r in result.reports] +
                         ["summary: " + ", ".join(f"{k}={v}" for k, v in result.summary.items())])
        _emit(args, payload, text)
        return exit_code(r.verdict for r in result.reports)

    if args.command == "check-admissible":
        try:
            e = parse(args.expr_file.read_text(encoding="utf-8"))
        except ExpressionSyntaxError as exc:
            _emit(args, {"verdict": "error", "message": str(exc)}, f"syntax error: {exc}")
            return EXIT_CODES[Verdict.ERROR]
        rep = check_admissibility(e)
        text = rep.verdict + "".join(f"\n  {v.path}: [{v.rule}] {v.message}" for v in rep.violations)
        _emit(args, rep.to_dict(), text)
        return 0 if rep.admissible else EXIT_CODES[Verdict.INADMISSIBLE]

    if args.command == "render-prompt":
        m = load_manifest(args.manifest)
        text = render_prompt(m)
        _emit(args, {"id": m.id, "prompt": text}, text.rstrip("\n"))
        return 0

    if args.command == "list":
        ms = load_registry(args.manifest_dir)
        rows = [{"id": m.id, "mode": m.mode, "domain": m.domain, "output_type": m.output_type,
                 "solvability": m.solvability, "title": m.title} for m in ms]
        text = "\n".join(f"{r['id']:<28} {r['mode']:<24} {r['domain']:<21} {r['title']}" for r in rows)
        _emit(args, {"problems": rows}, text)
        return 0
    raise AssertionError(args.command)


if __name__ == "__main__":
    sys.exit(main())
