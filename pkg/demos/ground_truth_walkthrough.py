"""Digit matching and admissibility on a few small expressions."""

from mathcert.expr import check_admissibility, parse
from mathcert.ground_truth import GroundTruthSpec, ReferenceValue, verify_ground_truth
from mathcert.harness import load_manifest, render_prompt, shipped_manifest_dir

PI_53 = "3.14159265358979323846264338327950288419716939937510582"
spec = GroundTruthSpec.constant(ReferenceValue(PI_53, 50))

for text in ["4*atan(1)", "355/113", "sqrt(2) + sqrt(3)", "gamma(1/2)^2"]:
    rep = verify_ground_truth(spec, parse(text))
    print(f"{text:>20}  {rep.verdict.value:<5} matched {rep.matched_digits} of {rep.required_digits}")

for text in ["zeta(1)", "1349358983/1000000000000", "2^1000", "gamma(1/3)^3/(2*pi)"]:
    rep = check_admissibility(parse(text))
    print(f"{text:>26}  {rep.verdict}  {sorted(rep.rules())}")

print()
print(render_prompt(load_manifest(shipped_manifest_dir() / "airy_a5.json")))
