"""Check the shipped quintic Ramsey certificate, then watch a bad one get refuted."""

from fractions import Fraction

from mathcert.harness import load_manifest, run_verification, shipped_candidate_dir, shipped_manifest_dir
from mathcert.ramsey import RamseyCertificate, StepFunction, check_certificate, resulting_c

manifest = load_manifest(shipped_manifest_dir() / "ramsey_gnnw.json")
report = run_verification(manifest, shipped_candidate_dir() / "ramsey_gnnw.json")
print(report.to_text())

# p(lambda) = -5 lambda pushes F below zero around lambda = 1/2
half = StepFunction.constant(Fraction(1, 2))
bad = RamseyCertificate((Fraction(-5),), half, half)
print("c for p = -5 lambda:", resulting_c(bad))
verdict = check_certificate(bad)
print(verdict.status, verdict.counterexample)
