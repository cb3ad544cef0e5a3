"""Exact area of the shipped 128-triangle Kakeya construction, compared with the baseline."""

import json
from decimal import Context, Decimal

from mathcert.harness import load_manifest, run_verification, shipped_candidate_dir, shipped_manifest_dir
from mathcert.kakeya import KakeyaCandidate, KakeyaInstance, union_area_exact

manifest = load_manifest(shipped_manifest_dir() / "kakeya_128.json")
path = shipped_candidate_dir() / "kakeya_128.json"

intercepts = json.loads(path.read_text())["intercepts"]
area = union_area_exact(KakeyaInstance(128), KakeyaCandidate.parse(intercepts))
print(f"exact area: {area.numerator}/{area.denominator}")
ctx = Context(prec=25)
print(f"          ~= {ctx.divide(Decimal(area.numerator), Decimal(area.denominator))}")
print(f"baseline    {ctx.divide(Decimal(manifest.baseline.value.numerator), manifest.baseline.value.denominator)}")

report = run_verification(manifest, path)
print(report.to_text())
