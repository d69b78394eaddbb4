import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from telegraph_taylor import expr as E
from telegraph_taylor.parser import ParseError, parse

from strategies import points, trees

X, T = E.X, E.T


def ev(e, x, t=0.0):
    return E.evaluate(e, x, t)


# -- construction and equality ---------------------------------------------

def test_structural_equality_and_hash():
    a = E.Mul(E.Const(2), E.Sin(X))
    b = E.Mul(E.Const(2), E.Sin(X))
    assert a == b and hash(a) == hash(b)
    assert a != E.Mul(E.Const(2), E.Cos(X))


def test_pow_rejects_zero_exponent():
    with pytest.raises(ValueError):
        E.Pow(X, 0)


# -- diff ------------------------------------------------------------------

def test_diff_constant():
    assert E.is_zero(E.diff(E.Const(7), "x"))


def test_diff_exp_sinh_in_t():
    e = parse("exp(-2*t)*sinh(x)")
    assert E.diff(e, "t") == E.simplify(parse("-2*exp(-2*t)*sinh(x)"))


def test_diff_nested_sin_matches_finite_difference():
    e = parse("sin(exp(-t)*(1-cos(pi*x)))")
    d = ev(E.diff(e, "t"), 0.5, 0.0)
    h = 1e-6
    fd = (ev(e, 0.5, h) - ev(e, 0.5, -h)) / (2 * h)
    assert d == pytest.approx(-math.cos(1), abs=1e-12)
    assert abs(fd - d) < 1e-8


def test_diff_rejects_unknown_variable():
    with pytest.raises(ValueError):
        E.diff(X, "y")


# -- evaluate --------------------------------------------------------------

def test_eval_examples():
    assert ev(E.Sinh(X), 0.0) == 0.0
    assert ev(parse("sinh(x)*exp(-2*t)"), 0.5, 1.0) == pytest.approx(math.sinh(0.5) * math.exp(-2), rel=1e-15)
    assert ev(parse("sinh(x)*exp(-2*t)"), 0.5, 1.0) == pytest.approx(0.0705226, abs=1e-7)
    assert ev(parse("1-cos(pi*x)"), 1.0) == pytest.approx(2.0, abs=1e-15)


def test_eval_vectorised():
    xs = np.linspace(0, 1, 7)
    np.testing.assert_allclose(E.evaluate(parse("x^2+sin(x)"), xs), xs**2 + np.sin(xs), rtol=1e-15)


# -- simplify --------------------------------------------------------------

def test_simplify_identities():
    assert E.simplify(parse("0*sin(x) + sinh(x)")) == E.Sinh(X)
    assert E.simplify(E.Neg(E.Neg(parse("cos(pi*x)")))) == E.simplify(parse("cos(pi*x)"))


def test_simplify_collects_to_four_s():
    # (4a - b^2) s + s + 3 s + (-4a + b^2) s with a = 10, b = 5
    e = parse("(4*10 - 5^2)*sinh(x) + sinh(x) + 3*sinh(x) + (-4*10 + 5^2)*sinh(x)")
    assert E.simplify(e) == E.simplify(parse("4*sinh(x)"))


def test_simplify_folds_function_at_zero():
    assert E.as_constant(parse("cos(0) + sin(0) + exp(0) + cosh(0) + sinh(0)")) == 3


@settings(max_examples=200, deadline=None)
@given(trees(), st.lists(points, min_size=3, max_size=3))
def test_simplify_idempotent_and_preserves_value(e, pts):
    s = E.simplify(e)
    assert E.simplify(s) == s
    for x, t in pts:
        a, b = ev(e, x, t), ev(s, x, t)
        assert abs(a - b) <= 1e-12 * max(1.0, abs(a))


# -- t_taylor_coeffs -------------------------------------------------------

def test_taylor_exp_sinh():
    cs = E.t_taylor_coeffs(parse("exp(-2*t)*sinh(x)"), 2)
    want = [parse("sinh(x)"), parse("-2*sinh(x)"), parse("2*sinh(x)")]
    assert cs == [E.simplify(w) for w in want]


def test_taylor_t_independent():
    cs = E.t_taylor_coeffs(parse("x^2"), 3)
    assert cs[0] == E.simplify(parse("x^2"))
    assert all(E.is_zero(c) for c in cs[1:])


def test_taylor_coefficients_have_no_t():
    cs = E.t_taylor_coeffs(parse("sin(exp(-t)*(1-cos(pi*x)))"), 6)
    assert not any(c.has("t") for c in cs)
    assert ev(cs[1], 0.5) == pytest.approx(-math.cos(1), abs=1e-14)


@settings(max_examples=200, deadline=None)
@given(trees(3), st.floats(-1, 1), st.floats(-0.5, 0.5))
def test_taylor_reproduces_function(e, x, t):
    e = E.simplify(e)
    cs = E.t_taylor_coeffs(e, 12)
    approx = sum(ev(c, x) * t**k for k, c in enumerate(cs))
    exact = ev(e, x, t)
    scale = max(1.0, sum(abs(ev(c, x)) * 0.5**k for k, c in enumerate(cs)))
    assert abs(approx - exact) <= 1e-9 * scale


# -- derivative property ---------------------------------------------------

@settings(max_examples=200, deadline=None)
@given(trees(), points)
def test_diff_matches_central_difference(e, pt):
    x, t = pt
    h = 1e-6
    d = ev(E.diff(e, "t"), x, t)
    fd = (ev(e, x, t + h) - ev(e, x, t - h)) / (2 * h)
    scale = max(1.0, abs(d), abs(ev(e, x, t)))
    assert abs(d - fd) <= 1e-6 * scale


# -- size cap --------------------------------------------------------------

def test_size_cap(monkeypatch):
    monkeypatch.setattr(E, "MAX_NODES", 50)
    with pytest.raises(E.ExpressionTooLarge):
        E.t_taylor_coeffs(parse("sin(exp(-t)*(1-cos(pi*x)))"), 6)


# -- parser ----------------------------------------------------------------

def test_parse_grammar():
    e = parse("(3 - 4*10 + 5^2) * exp(-2*t) * sinh(x)")
    assert E.simplify(e) == E.simplify(parse("-12*exp(-2*t)*sinh(x)"))
    assert E.as_constant(parse("2**3")) == 8
    assert E.as_constant(parse("1/2 + 0.25")) == Fraction(3, 4)
    assert E.as_constant(parse("1e-2")) == Fraction(1, 100)


@pytest.mark.parametrize("bad", ["", "x +", "sin x", "foo(x)", "x/x", "x^-1", "x^1.5", "(x", "x $ 2", "1/0"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse(bad)


def test_to_string_round_trips():
    e = E.simplify(parse("-(1-cos(pi*x))*exp(-t) + 2*x^3"))
    assert E.simplify(parse(E.to_string(e))) == e
