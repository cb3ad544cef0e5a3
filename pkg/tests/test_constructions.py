import itertools
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mathcert.constructions import (
    BaselineSpec,
    CandidateSchemaError,
    ConfigurationError,
    ValidationOutcome,
    get_validator,
    score_against_baseline,
    validate_dts,
    validate_hadamard,
    validate_mols,
    validator_ids,
)
from mathcert.report import Verdict


def brute_dts(n, k, rows):
    """Direct definition: normalised increasing rows, all within-row differences distinct."""
    if len(rows) != n:
        return False
    diffs = []
    for row in rows:
        if len(row) != k + 1 or row[0] != 0:
            return False
        for a, b in zip(row, row[1:]):
            if b <= a:
                return False
        for i in range(len(row)):
            for j in range(i + 1, len(row)):
                diffs.append(row[j] - row[i])
    return len(diffs) == len(set(diffs))


def random_rows(rng):
    n, k = rng.randint(1, 4), rng.randint(1, 4)
    rows = []
    for _ in range(n + (rng.random() < 0.05)):
        if rng.random() < 0.85:
            row = [0] + sorted(rng.sample(range(1, 31), k))
        else:
            row = [rng.randint(-2, 30) for _ in range(k + 1 + rng.choice([0, 0, 1, -1]))]
        rows.append(row)
    return n, k, rows


def greedy_dts(n, k):
    used, rows = set(), []
    for _ in range(n):
        row = [0]
        while len(row) < k + 1:
            c = row[-1] + 1
            while True:
                new = {c - x for x in row}
                if not new & used and len(new) == len(row):
                    break
                c += 1
            used |= {c - x for x in row}
            row.append(c)
        rows.append(row)
    return rows


def test_dts_examples():
    out = validate_dts(1, 2, [[0, 1, 3]])
    assert out.valid and out.metric == 3
    out = validate_dts(1, 2, [[0, 1, 2]])
    assert not out.valid and any("duplicate difference 1" in d for d in out.diagnostics)
    out = validate_dts(2, 1, [[0, 1], [0, 1]])
    assert not out.valid and any("row 0" in d and "row 1" in d for d in out.diagnostics)


def test_dts_shape_diagnostics():
    assert "does not start at 0" in validate_dts(1, 2, [[1, 2, 4]]).diagnostics[0]
    assert any("negative" in d for d in validate_dts(1, 2, [[0, -1, 4]]).diagnostics)
    assert any("expected 2 rows" in d for d in validate_dts(2, 2, [[0, 1, 3]]).diagnostics)


def test_dts_oracle_equivalence():
    rng = random.Random(2024)
    disagreements = 0
    valid_seen = 0
    for _ in range(1000):
        n, k, rows = random_rows(rng)
        out = validate_dts(n, k, rows)
        expected = brute_dts(n, k, rows)
        disagreements += out.valid != expected
        if expected:
            valid_seen += 1
            assert out.metric == max(max(r) for r in rows)
    assert disagreements == 0
    assert valid_seen > 50


@given(st.randoms(use_true_random=False))
def test_dts_row_permutation(rng):
    rows = greedy_dts(4, 3)
    shuffled = rows[:]
    rng.shuffle(shuffled)
    a, b = validate_dts(4, 3, rows), validate_dts(4, 3, shuffled)
    assert a.valid and b.valid and a.metric == b.metric


def test_strict_improvement_rule():
    base = BaselineSpec(Fraction(112), "minimize")
    better = score_against_baseline(ValidationOutcome(True, Fraction(111)), base)
    assert better.verdict is Verdict.PASS
    assert better.details["relative_improvement_exact"] == str(Fraction(1, 112))
    tie = score_against_baseline(ValidationOutcome(True, Fraction(112)), base)
    assert tie.verdict is Verdict.FAIL
    assert any("ties" in d for d in tie.diagnostics)
    invalid = score_against_baseline(validate_dts(1, 2, [[0, 1, 2]]), base)
    assert invalid.verdict is Verdict.FAIL and any("duplicate difference" in d for d in invalid.diagnostics)


def test_maximize_direction():
    base = BaselineSpec("0.5", "maximize")
    assert score_against_baseline(ValidationOutcome(True, Fraction(3, 5)), base).verdict is Verdict.PASS
    assert score_against_baseline(ValidationOutcome(True, Fraction(1, 2)), base).verdict is Verdict.FAIL


def test_greedy_7_5_is_valid_but_worse():
    rows = greedy_dts(7, 5)
    v = get_validator("dts")
    out = v.validate({"n": 7, "k": 5, "rows": rows}, {"n": 7, "k": 5})
    assert out.valid and out.metric > 112
    assert score_against_baseline(out, BaselineSpec(112)).verdict is Verdict.FAIL


def sylvester(m):
    h = np.array([[1]])
    for _ in range(m):
        h = np.block([[h, h], [h, -h]])
    return h


def test_hadamard_examples():
    assert validate_hadamard([[1]]).valid
    assert validate_hadamard([[1, 1], [1, -1]]).valid
    out = validate_hadamard([[1, 1], [1, 1]])
    assert not out.valid and "dot product 2" in out.diagnostics[0]
    assert not validate_hadamard([[1, 0], [1, -1]]).valid
    assert not validate_hadamard([[1, 1, 1]]).valid


@given(st.randoms(use_true_random=False))
def test_hadamard_equivalences(rng):
    h = sylvester(2)
    r = np.diag([rng.choice([1, -1]) for _ in range(4)])
    c = np.diag([rng.choice([1, -1]) for _ in range(4)])
    p = np.eye(4, dtype=int)[rng.sample(range(4), 4)]
    q = np.eye(4, dtype=int)[rng.sample(range(4), 4)]
    assert validate_hadamard((p @ r @ h @ c @ q).tolist()).valid


def test_mols_examples():
    a = [[0, 1, 2], [1, 2, 0], [2, 0, 1]]
    b = [[0, 1, 2], [2, 0, 1], [1, 2, 0]]
    assert validate_mols(3, [a, b]).valid
    s1, s2 = [[0, 1], [1, 0]], [[1, 0], [0, 1]]
    assert not validate_mols(2, [s1, s2]).valid
    assert validate_mols(2, [s1]).valid
    assert not validate_mols(3, [[[0, 1, 2], [0, 1, 2], [2, 0, 1]]]).valid


def brute_orthogonal(a, b):
    n = len(a)
    return len({(a[i][j], b[i][j]) for i in range(n) for j in range(n)}) == n * n


def test_mols_order_independent_and_brute_force():
    # GF(5): L_m(i, j) = m*i + j
    squares = [[[(m * i + j) % 5 for j in range(5)] for i in range(5)] for m in range(1, 5)]
    assert validate_mols(5, squares).valid
    for perm in itertools.permutations(squares):
        assert validate_mols(5, list(perm)).valid
    assert all(brute_orthogonal(a, b) for a, b in itertools.combinations(squares, 2))
    broken = squares[:2] + [squares[0]]
    assert not validate_mols(5, broken).valid
    assert not validate_mols(5, list(reversed(broken))).valid


def test_mols_huge_symbols_do_not_overflow():
    out = validate_mols(2, [[[0, 10 ** 30], [1, 0]]])
    assert not out.valid


def test_registry():
    assert {"dts", "hadamard", "mols", "kakeya_thin_triangle", "ramsey_gnnw"} <= set(validator_ids())
    with pytest.raises(ConfigurationError):
        get_validator("no-such-validator")


@pytest.mark.parametrize("candidate", [
    None, [], {"n": 1}, {"n": 1, "k": 2, "rows": [[0, 1, "3"]]}, {"n": True, "k": 2, "rows": [[0, 1, 3]]},
    {"n": 1, "k": 2, "rows": [[0, 1, 3.0]]}, {"n": 1, "k": 2, "rows": [[0, 1, 3]], "extra": 1},
    {"n": 1, "k": 2, "rows": "0 1 3"},
])
def test_malformed_dts_candidates(candidate):
    with pytest.raises(CandidateSchemaError):
        get_validator("dts").validate(candidate, {})


def test_parameter_mismatch_is_invalid():
    out = get_validator("dts").validate({"n": 1, "k": 2, "rows": [[0, 1, 3]]}, {"n": 7, "k": 5})
    assert not out.valid
