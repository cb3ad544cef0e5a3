import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mathcert.expr import (
    AdmissibilityPolicy,
    BinOp,
    Call,
    Const,
    EvaluationDomainError,
    ExpressionSyntaxError,
    InstabilityError,
    Rat,
    UnboundVariableError,
    UnknownIdentifierError,
    UnsupportedTierError,
    check_admissibility,
    evaluate,
    evaluate_interval,
    free_variables,
    from_json,
    parse,
    render,
    to_json,
)
from mathcert.numeric import rational_to_bigfloat

import exprgen


def test_structural_parses():
    e = parse("gamma(1/3)^2 / (4*pi)")
    assert e == BinOp("div", BinOp("pow", Call("gamma", (Rat(Fraction(1, 3)),)), Rat(2)),
                      BinOp("mul", Rat(4), Const("pi")))
    assert parse("4*atan(1)") == BinOp("mul", Rat(4), Call("atan", (Rat(1),)))


@pytest.mark.parametrize("text", ["0.5", "1e5", "2 +", "sin(", "(1", "1 2", "", "pi pi", "gamma()", "3 ** 2"])
def test_syntax_errors(text):
    with pytest.raises(ExpressionSyntaxError):
        parse(text)


def test_syntax_error_has_position():
    with pytest.raises(ExpressionSyntaxError) as info:
        parse("1 + 0.5")
    assert "column" in str(info.value)


def test_unknown_function_is_reported():
    with pytest.raises(UnknownIdentifierError):
        parse("integrate(x)")


def test_power_binds_tighter_than_unary_minus():
    assert evaluate(parse("-2^2"), target_digits=10).value == -4
    assert evaluate(parse("2^3^2"), target_digits=10).value == 512


@pytest.mark.parametrize("text,names", [
    ("n*(n+1) + c^2/2", {"n", "c"}),
    ("pi + e", set()),
    ("x + x", {"x"}),
])
def test_free_variables(text, names):
    assert free_variables(parse(text)) == names


def test_admissibility_examples():
    assert check_admissibility(parse("zeta(3)")).admissible
    rep = check_admissibility(parse("1349358983/1000000000000"))
    assert not rep.admissible and rep.rules() == {"literal-digit-budget"}
    rep = check_admissibility(parse("zeta(1)"))
    assert not rep.admissible and "zeta-argument" in rep.rules()


@pytest.mark.parametrize("text,rule", [
    ("gamma(0)", "gamma-argument"),
    ("gamma(-3)", "gamma-argument"),
    ("zeta(1/2)", "zeta-argument"),
    ("2^1000", "exponent-magnitude"),
    ("root(2, 1)", "root-index"),
    ("polylog(2, 1/2)", "unsupported-tier"),
    ("sin(1, 2)", "arity"),
    ("1234567", "literal-digit-budget"),
])
def test_rule_level_diagnostics(text, rule):
    rep = check_admissibility(parse(text))
    assert rule in rep.rules()
    assert all(v.path.startswith("$") for v in rep.violations)


def test_policy_overrides():
    e = parse("1349358983/1000000000000")
    assert check_admissibility(e, AdmissibilityPolicy.from_overrides({"max_literal_digits": 13})).admissible
    narrow = AdmissibilityPolicy.from_overrides({"allowed_functions": ["sqrt"]})
    assert check_admissibility(parse("exp(1)"), narrow).rules() == {"function-not-allowed"}


def test_admissibility_never_evaluates():
    # poles and huge exponents are reported, not computed
    for text in ["gamma(0)", "zeta(1)", "1/(1-1)", "(10^60)^(10^60)", "log(0)"]:
        check_admissibility(parse(text))


def test_gamma_and_zeta_identities():
    a = evaluate(parse("gamma(1/2)"), target_digits=100)
    b = evaluate(parse("sqrt(pi)"), target_digits=100)
    assert a.value == b.value
    a = evaluate(parse("zeta(2)"), target_digits=100)
    b = evaluate(parse("pi^2/6"), target_digits=100)
    assert a.value == b.value


def test_inverse_functions():
    assert evaluate(parse("exp(log(7/2))"), target_digits=60).to_fraction() == Fraction(7, 2)


@pytest.mark.parametrize("text", ["log(0)", "1/(2-2)", "sqrt(-1)", "(-8)^(1/3)", "log(-2)", "asin(2)"])
def test_domain_errors(text):
    with pytest.raises(EvaluationDomainError):
        evaluate(parse(text), target_digits=20)


def test_odd_root_of_negative():
    assert evaluate(parse("root(-8, 3)"), target_digits=20).to_fraction() == -2


def test_unbound_and_tier_errors():
    with pytest.raises(UnboundVariableError):
        evaluate(parse("x + 1"), target_digits=10)
    with pytest.raises(UnsupportedTierError):
        evaluate(parse("ellipk(1/2)"), target_digits=10)


def test_bindings_substitute_exactly():
    v = evaluate(parse("n*(n+1) + c^2/2"), {"n": Fraction(3), "c": Fraction(1, 2)}, target_digits=30)
    assert v.to_fraction() == Fraction(97, 8)


def test_render_round_trip_corpus():
    rng = random.Random(11)
    for _ in range(500):
        t = exprgen.tree(rng, 5, variables=("x", "n"))
        s = render(t)
        once = parse(s)
        assert parse(render(once)) == once


def test_json_round_trip():
    rng = random.Random(12)
    for _ in range(100):
        t = parse(render(exprgen.tree(rng, 4)))
        assert from_json(to_json(t)) == t


def two_precision_agreement(count: int = 200, seed: int = 3):
    """The 150-digit value rounded to 50 digits should equal the 50-digit value.

    Returns (expressions compared, expressions skipped, renders of disagreements).
    """
    rng = random.Random(seed)
    compared = skipped = 0
    bad = []
    while compared < count:
        e = exprgen.tree(rng, 4)
        try:
            lo = evaluate(e, target_digits=50)
            hi = evaluate(e, target_digits=150)
        except (EvaluationDomainError, InstabilityError, OverflowError):
            skipped += 1
            continue
        if rational_to_bigfloat(hi.to_fraction(), 50).value != lo.value:
            bad.append(render(e))
        compared += 1
    return compared, skipped, bad


def test_two_precision_agreement():
    compared, skipped, bad = two_precision_agreement()
    assert bad == []
    assert skipped < compared


def test_point_value_inside_interval():
    rng = random.Random(5)
    checked = 0
    while checked < 200:
        e = exprgen.tree(rng, 4, functions=exprgen.INTERVAL_UNARY, special=False)
        try:
            iv = evaluate_interval(e, precision=50)
            pt = evaluate(e, target_digits=50)
        except (EvaluationDomainError, InstabilityError, ArithmeticError):
            continue
        assert iv.contains(pt.to_fraction()), render(e)
        checked += 1


@given(st.fractions(min_value=Fraction(1, 100), max_value=100, max_denominator=500))
@settings(max_examples=100)
def test_sqrt_square(x):
    e = BinOp("pow", Call("sqrt", (Rat(x),)), Rat(2))
    assert abs(evaluate(e, target_digits=40).to_fraction() - x) <= x * Fraction(1, 10 ** 39)
