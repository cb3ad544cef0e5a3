import json
import random
from fractions import Fraction

import numpy as np
import pytest

from mathcert.constructions import BaselineSpec, CandidateSchemaError
from mathcert.kakeya import (
    KakeyaCandidate,
    KakeyaInstance,
    event_abscissae,
    union_area_exact,
    union_length_at,
    verify_kakeya,
)
from mathcert.report import Verdict


def cand(values):
    return KakeyaCandidate.parse([str(v) for v in values])


def grid_area(n, intercepts, samples=50_000):
    """Midpoint rule on [0, 1]; at each x the N intervals are merged after sorting."""
    x = (np.arange(samples) + 0.5) / samples
    slopes = np.arange(n) / n
    b = np.array([float(v) for v in intercepts])
    hi = b[None, :] + slopes[None, :] * x[:, None]
    lo = hi - (1.0 / n) * (1 - x[:, None])
    order = np.argsort(lo, axis=1)
    lo = np.take_along_axis(lo, order, axis=1)
    hi = np.take_along_axis(hi, order, axis=1)
    reach = np.maximum.accumulate(hi, axis=1)
    prev = np.concatenate([np.full((samples, 1), -np.inf), reach[:, :-1]], axis=1)
    covered = np.clip(hi - np.maximum(lo, prev), 0, None)
    return covered.sum(axis=1).mean()


def random_intercepts(rng, n):
    return [Fraction(-rng.randint(0, 10 ** 4), 10 ** 4) for _ in range(n)]


def test_length_examples():
    one = KakeyaInstance(1)
    c = cand(["0.37"])
    assert union_length_at(one, c, 0) == 1
    assert union_length_at(one, c, 1) == 0
    two = KakeyaInstance(2)
    assert union_length_at(two, cand([0, 0]), 0) == Fraction(1, 2)


@pytest.mark.parametrize("b", ["0", "-3.25", "17", "0.0001"])
def test_single_triangle_area(b):
    inst = KakeyaInstance(1)
    assert union_area_exact(inst, cand([b])) == Fraction(1, 2)


@pytest.mark.parametrize("n", [1, 3, 8])
def test_single_slope_identical_triangles(n):
    # n copies at the same offset still cover at most the fan of n slopes
    inst = KakeyaInstance(n)
    area = union_area_exact(inst, cand([0] * n))
    assert Fraction(1, 2 * n) <= area <= Fraction(1, 2)


def test_disjoint_pair():
    inst = KakeyaInstance(2)
    assert union_area_exact(inst, cand(["0", "-10"])) == inst.delta


def test_oracle_agreement():
    rng = random.Random(99)
    worst = 0.0
    for trial in range(100):
        n = [2, 4, 8][trial % 3]
        b = random_intercepts(rng, n)
        exact = union_area_exact(KakeyaInstance(n), KakeyaCandidate.parse(b))
        worst = max(worst, abs(float(exact) - grid_area(n, b)))
    assert worst < 1e-6


def test_translation_invariance():
    rng = random.Random(5)
    for _ in range(200):
        n = rng.choice([2, 3, 4, 8])
        inst = KakeyaInstance(n)
        b = random_intercepts(rng, n)
        shift = Fraction(rng.randint(-10 ** 5, 10 ** 5), rng.choice([1, 7, 1000]))
        assert union_area_exact(inst, KakeyaCandidate.parse(b)) == \
            union_area_exact(inst, KakeyaCandidate.parse([v + shift for v in b]))


def test_removal_monotonicity_and_bounds():
    """Sending one triangle far away adds exactly delta/2 to the rest, so the
    area of the others is area(moved) - delta/2; it must not exceed the full area."""
    rng = random.Random(6)
    for _ in range(200):
        n = rng.choice([2, 3, 4, 8])
        inst = KakeyaInstance(n)
        b = random_intercepts(rng, n)
        full = union_area_exact(inst, KakeyaCandidate.parse(b))
        assert inst.delta / 2 <= full <= Fraction(1, 2)
        j = rng.randrange(n)
        moved = b[:]
        moved[j] = Fraction(-1000)
        without = union_area_exact(inst, KakeyaCandidate.parse(moved)) - inst.delta / 2
        assert without <= full
        assert full - without <= inst.delta / 2


def test_union_length_continuous_at_events():
    rng = random.Random(8)
    for _ in range(20):
        n = rng.choice([2, 3, 4])
        inst = KakeyaInstance(n)
        c = KakeyaCandidate.parse(random_intercepts(rng, n))
        pts = sorted(set([Fraction(0)] + event_abscissae(inst, c) + [Fraction(1)]))
        L = lambda x: union_length_at(inst, c, x)  # noqa: E731
        for a, e, b in zip(pts, pts[1:], pts[2:]):
            ml, mr = (a + e) / 2, (e + b) / 2
            from_left = L(a) + (L(ml) - L(a)) / (ml - a) * (e - a)
            from_right = L(b) + (L(mr) - L(b)) / (mr - b) * (e - b)
            assert from_left == L(e) == from_right


def test_zero_intercepts_fail_at_128():
    inst = KakeyaInstance(128)
    rep = verify_kakeya(inst, cand([0] * 128), BaselineSpec("0.1148103258186177"))
    assert rep.verdict is Verdict.FAIL


def test_tie_fails():
    rep = verify_kakeya(KakeyaInstance(1), cand(["0"]), BaselineSpec(Fraction(1, 2)))
    assert rep.verdict is Verdict.FAIL
    assert any("ties" in d for d in rep.diagnostics)


def test_parse_inputs():
    assert KakeyaCandidate.parse([0.1]).intercepts == (Fraction(1, 10),)
    assert KakeyaCandidate.parse(["-0.005859375"]).intercepts == (Fraction(-3, 512),)
    for bad in ([True], ["nan"], [float("inf")], ["abc"], ["1e5000"], [None], "0.1"):
        with pytest.raises(CandidateSchemaError):
            KakeyaCandidate.parse(bad)
    with pytest.raises(CandidateSchemaError):
        KakeyaCandidate.parse(["0"], KakeyaInstance(2))


def test_shipped_candidate_is_dyadic(candidate_dir):
    values = json.loads((candidate_dir / "kakeya_128.json").read_text())["intercepts"]
    c = KakeyaCandidate.parse(values)
    assert len(c.intercepts) == 128
    assert all((v * 1024).denominator == 1 for v in c.intercepts)
