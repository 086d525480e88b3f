import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cartan235 import expr as ex
from cartan235.errors import ArityError, DomainError, ExactnessError, ParseError


# ------------------------------------------------------------- parsing

def test_parse_basic_shapes():
    e = ex.parse("x1 + sin(x2)")
    assert isinstance(e, ex.Add)
    assert e.lhs == ex.Var(0)
    assert isinstance(e.rhs, ex.Fun) and e.rhs.name == "sin"
    assert e.rhs.arg == ex.Var(1)

    e = ex.parse("x1^2 * x3")
    assert isinstance(e, ex.Mul)
    assert isinstance(e.lhs, ex.Pow)
    assert e.lhs.base == ex.Var(0) and e.lhs.exponent == 2
    assert e.rhs == ex.Var(2)


def test_parse_aliases_match_numbered_variables():
    for alias, numbered in (("x", "x1"), ("y", "x2"), ("p", "x3"),
                            ("q", "x4"), ("z", "x5")):
        assert ex.parse(alias) == ex.parse(numbered)


def test_parse_unclosed_call_position():
    with pytest.raises(ParseError) as info:
        ex.parse("sin(")
    assert info.value.position == 4


def test_parse_unknown_name_position():
    with pytest.raises(ParseError) as info:
        ex.parse("x1 + foo")
    assert info.value.position == 5
    with pytest.raises(ParseError):
        ex.parse("x6")  # only five chart variables


def test_parse_arity():
    with pytest.raises(ArityError):
        ex.parse("sin(x1, x2)")
    with pytest.raises(ParseError):
        ex.parse("sin()")


def test_parse_rational_literal_folds():
    e = ex.parse("1/3")
    assert e == ex.Const(Fraction(1, 3))
    e = ex.parse("2/4 * x1")
    assert isinstance(e, ex.Mul) and e.lhs == ex.Const(Fraction(1, 2))
    # division by an expression is not folded
    assert isinstance(ex.parse("1/x1"), ex.Div)


def test_parse_precedence_and_associativity():
    p = (1.3, -0.7, 2.1, 0.4, 1.9)
    cases = {
        "1 - 2 - 3": 1 - 2 - 3,
        "2 ^ 3 ^ 2": 64.0,  # literal exponents chain left: (2^3)^2
        "-x1^2": -(1.3 ** 2),
        "(0-2)^2": 4.0,
        "1 + 2 * 3 ^ 2": 19.0,
        "x1 * x2 / x3 * x4": 1.3 * -0.7 / 2.1 * 0.4,
    }
    for text, want in cases.items():
        assert ex.evaluate(ex.parse(text), p) == pytest.approx(want, rel=1e-15)


def test_integer_exponent_required():
    with pytest.raises(ParseError):
        ex.parse("x1 ^ x2")
    with pytest.raises(ParseError):
        ex.parse("x1 ^ 2.5")
    assert ex.parse("x1^(-2)") == ex.Pow(ex.Var(0), -2)


def test_parse_whitespace_and_nesting():
    e = ex.parse("  sqrt( 1 - x2 ^ 2 )  ")
    assert isinstance(e, ex.Fun) and e.name == "sqrt"


# -------------------------------------------------------- serialization

_LEAVES = st.one_of(
    st.integers(-4, 4).map(ex.Const),
    st.integers(0, 4).map(ex.Var),
    st.fractions(min_value=-3, max_value=3, max_denominator=7).map(ex.Const),
)


def _combine(children):
    return st.one_of(
        st.tuples(children, children).map(lambda t: ex.Add(*t)),
        st.tuples(children, children).map(lambda t: ex.Sub(*t)),
        st.tuples(children, children).map(lambda t: ex.Mul(*t)),
        st.tuples(children, children).map(lambda t: ex.Div(*t)),
        children.map(ex.Neg),
        st.tuples(children, st.integers(0, 3)).map(lambda t: ex.Pow(*t)),
        st.tuples(st.sampled_from(ex.FUNCTIONS), children).map(
            lambda t: ex.Fun(t[0], t[1])),
    )


EXPRS = st.recursive(_LEAVES, _combine, max_leaves=25)


@settings(max_examples=300)
@given(EXPRS, st.tuples(*[st.floats(-2, 2) for _ in range(5)]))
def test_serialize_parse_round_trip_evaluates_identically(e, point):
    text = ex.serialize(e)
    reparsed = ex.parse(text)
    try:
        want = ex.evaluate(e, point)
    except DomainError:
        with pytest.raises(DomainError):
            ex.evaluate(reparsed, point)
        return
    got = ex.evaluate(reparsed, point)
    if math.isnan(want):
        assert math.isnan(got)
    else:
        assert got == want or got == pytest.approx(want, rel=1e-15)


def test_serialize_readable():
    assert ex.serialize(ex.parse("x1 + sin(x2) * 3")) == "x1 + sin(x2) * 3"
    assert ex.serialize(ex.Pow(ex.Add(ex.Var(0), ex.Const(1)), 2)) == "(x1 + 1)^2"
    assert ex.serialize(ex.Const(Fraction(1, 3))) == "1/3"
    assert ex.serialize(ex.Mul(ex.Const(Fraction(1, 3)), ex.Var(1))) == "1/3 * x2"


# -------------------------------------------------------------- algebra

def test_smart_constructors_fold_constants():
    assert ex.add(ex.Const(2), ex.Const(3)) == ex.Const(5)
    assert ex.mul(ex.Const(0), ex.Var(1)) == ex.Const(0)
    assert ex.mul(ex.Const(1), ex.Var(1)) == ex.Var(1)
    assert ex.pow_int(ex.Var(2), 0) == ex.Const(1)
    assert ex.pow_int(ex.Var(2), 1) == ex.Var(2)


# ------------------------------------------------------- differentiation

def test_differentiate_pinned_values():
    e = ex.parse("x1^2 * x3")
    d = ex.differentiate(e, 1)
    assert ex.evaluate(d, (2, 0, 5, 0, 0)) == 20.0
    assert ex.evaluate(ex.differentiate(ex.parse("sin(x2)"), 2),
                       (0, 0, 0, 0, 0)) == 1.0
    assert ex.differentiate(ex.parse("x1 + x2"), 3) == ex.Const(0)


def test_differentiate_chain_rules():
    p = (0.4, 1.2, -0.3, 0.9, 0.5)
    for text in ("sin(x1*x2)", "cos(x1^3)", "exp(x1 - x2^2)",
                 "sqrt(1 + x1^2)", "x1^(-2)", "x2 / (1 + x1^2)"):
        e = ex.parse(text)
        for i in (1, 2):
            sym = ex.evaluate(ex.differentiate(e, i), p)
            num = ex.fd_partial(e, i, p)
            assert sym == pytest.approx(num, rel=1e-7, abs=1e-9)


@settings(max_examples=300)
@given(EXPRS, st.integers(1, 5),
       st.tuples(*[st.floats(-1.5, 1.5) for _ in range(5)]))
def test_differentiate_matches_finite_differences(e, i, point):
    d = ex.differentiate(e, i)
    try:
        sym = ex.evaluate(d, point)
        num = ex.fd_partial(e, i, point)
    except DomainError:
        return
    if not (math.isfinite(sym) and math.isfinite(num)):
        return
    if abs(sym) > 1e6:  # steep region: finite differences lose accuracy
        return
    assert sym == pytest.approx(num, rel=2e-4, abs=2e-4)


def test_differentiation_total_on_random_trees():
    rng = np.random.default_rng(3)
    from helpers import random_polynomial
    for _ in range(50):
        e = random_polynomial(rng)
        for i in range(1, 6):
            d = ex.differentiate(e, i)
            assert isinstance(d, ex.ScalarExpr)


# ------------------------------------------------------------ evaluation

def test_evaluate_domain_errors_name_offender():
    with pytest.raises(DomainError) as info:
        ex.evaluate(ex.parse("1 / (x1 - 1)"), (1, 0, 0, 0, 0))
    assert "x1 - 1" in str(info.value)
    with pytest.raises(DomainError):
        ex.evaluate(ex.parse("sqrt(x1)"), (-1, 0, 0, 0, 0))
    with pytest.raises(DomainError):
        ex.evaluate(ex.parse("x1 ^ (-1)"), (0, 0, 0, 0, 0))


def test_evaluate_point_arity():
    assert ex.evaluate(ex.parse("x3"), (0, 0, 7, 0, 0)) == 7.0
    with pytest.raises(ValueError):
        ex.evaluate(ex.parse("x3"), (0, 0))  # too few coordinates


def test_eval_exact_rational():
    e = ex.parse("(x1 + 1/3)^2 - x2/7")
    got = ex.eval_exact(e, (Fraction(1, 3), Fraction(7, 2), 0, 0, 0))
    assert got == Fraction(4, 9) - Fraction(1, 2)

    assert ex.eval_exact(ex.parse("sqrt(x1)"), (Fraction(9, 4), 0, 0, 0, 0)) \
        == Fraction(3, 2)
    with pytest.raises(ExactnessError):
        ex.eval_exact(ex.parse("sqrt(2)"), (0, 0, 0, 0, 0))
    # sin/cos/exp are exact only at zero
    assert ex.eval_exact(ex.parse("sin(0) + cos(0) + exp(0)"),
                         (0, 0, 0, 0, 0)) == 2
    with pytest.raises(ExactnessError):
        ex.eval_exact(ex.parse("sin(1)"), (0, 0, 0, 0, 0))


def test_substitute():
    e = ex.parse("x1^2 + x2")
    s = ex.substitute(e, {1: ex.parse("x3 + 1"), 2: ex.Const(5)})
    assert ex.evaluate(s, (0, 0, 2, 0, 0)) == 14.0


def test_max_slot():
    assert ex.max_slot(ex.parse("3")) == -1
    assert ex.max_slot(ex.parse("x1 * x4")) == 3
    assert ex.max_slot(ex.parse("z")) == 4
