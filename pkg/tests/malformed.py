"""Generators of candidate files that must be rejected before any mathematics runs."""

import json
import random
from collections import Counter

BAD_EXPR_TOKENS = ["0.5", "@", "1 +", "(2", "sin(", "pi pi", "3 ** 2", "#", "integrate(x)", "1/0", "x;y"]


def bad_expression(rng: random.Random) -> str:
    good = rng.choice(["pi", "4*atan(1)", "gamma(1/3)", "sqrt(2)", "n*(n+1)"])
    if rng.random() < 0.02:
        return rng.choice(["", "   \n"])
    bad = rng.choice(BAD_EXPR_TOKENS)
    return rng.choice([bad, f"{good} {bad}", f"{good}*({bad})"])


def _junk_value(rng, like=None):
    """A value whose type or element types cannot fit the field ``like``."""
    pool = [None, True, "x", -1.5, {}, 10 ** 400, "1e99999", {"k": 1}]
    if isinstance(like, list):
        return rng.choice(pool + [[[None]], [1, "a"], [None] * 3])
    pool += [[], [1, "a"]]
    return rng.choice([v for v in pool if type(v) is not type(like)])


def bad_json(rng: random.Random, problem_id: str) -> str:
    roll = rng.random()
    if roll < 0.15:
        raw = bytes(rng.randrange(256) for _ in range(rng.randint(0, 40)))
        return raw.decode("latin-1")
    if roll < 0.25:
        return json.dumps({"rows": [[0, 1]]})[: rng.randint(1, 10)]
    if roll < 0.35:
        return json.dumps(_junk_value(rng))
    shapes = {
        "dts_7_5": {"n": 7, "k": 5, "rows": [[0, 1, 3, 7, 12, 20]] * 7},
        "kakeya_128": {"intercepts": ["0"] * 128},
        "ramsey_gnnw": {"correction_coeffs": ["-0.25"], "M": {"breakpoints": [], "values": ["0.5"]},
                        "Y": {"breakpoints": [], "values": ["0.5"]}},
        "hadamard_668": {"order": 2, "matrix": [[1, 1], [1, -1]]},
        "mols_10_3": {"order": 10, "squares": []},
    }
    obj = json.loads(json.dumps(shapes[problem_id]))
    key = rng.choice(sorted(obj))
    how = rng.random()
    if how < 0.3:
        del obj[key]
    elif how < 0.5:
        obj["unexpected_" + str(rng.randint(0, 9))] = 1
    elif how < 0.8:
        obj[key] = _junk_value(rng, obj[key])
    else:
        if problem_id == "dts_7_5":
            obj["rows"] = [[0, 1, "3"]] * 7
        elif problem_id == "kakeya_128":
            obj["intercepts"] = ["0"] * rng.choice([0, 1, 127, 129])
        elif problem_id == "ramsey_gnnw":
            obj["M"] = {"breakpoints": ["0.5"], "values": ["0.5"]}
        elif problem_id == "hadamard_668":
            obj["matrix"] = [[1, 1.5], [1, -1]]
        else:
            obj["squares"] = "not a list"
    return json.dumps(obj)


def fuzz(manifests: dict, directory, count: int = 1000, seed: int = 1234):
    """Write ``count`` malformed candidates round-robin over ``manifests`` and verify each.

    Returns the verdict counts and the first few non-ERROR outcomes.
    """
    from mathcert.harness import run_verification

    rng = random.Random(seed)
    ids = sorted(manifests)
    counts, odd = Counter(), []
    for i in range(count):
        pid = ids[i % len(ids)]
        m = manifests[pid]
        if m.mode == "ground_truth_computable":
            path = directory / f"{pid}.{i}.expr"
            path.write_text(bad_expression(rng), encoding="utf-8")
        else:
            path = directory / f"{pid}.{i}.json"
            path.write_text(bad_json(rng, pid), encoding="utf-8")
        rep = run_verification(m, path)
        counts[rep.verdict.value] += 1
        if rep.verdict.value != "ERROR" and len(odd) < 5:
            odd.append((pid, path.read_text(encoding="utf-8")[:120], rep.diagnostics[:2]))
    return counts, odd
