import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from telegraph_taylor import expr as E
from telegraph_taylor.tseries import (
    OrderMismatch,
    TimeSeries,
    ts_add,
    ts_eval,
    ts_exp,
    ts_mul,
    ts_neg,
    ts_pow,
    ts_scale,
    ts_sin_cos,
)

coef = st.floats(-2, 2, allow_nan=False)


def series(order, elements=coef):
    return st.lists(elements, min_size=order + 1, max_size=order + 1).map(TimeSeries)


def close(u, v, tol):
    return all(abs(a - b) <= tol for a, b in zip(u, v))


def test_linear_ops():
    assert ts_add(TimeSeries([1, 2, 3]), TimeSeries([0, 0, 0])).to_list() == [1, 2, 3]
    assert ts_scale(TimeSeries([1, -1, 1]), 2).to_list() == [2, -2, 2]
    assert (TimeSeries([1, 1]) + ts_scale(TimeSeries([1, 1]), -1)).to_list() == [0, 0]
    assert ts_neg(TimeSeries([1, -2])).to_list() == [-1, 2]


def test_order_mismatch():
    with pytest.raises(OrderMismatch):
        TimeSeries([1, 2]) + TimeSeries([1, 2, 3])
    with pytest.raises(OrderMismatch):
        ts_mul(TimeSeries([1, 2]), TimeSeries([1]))


def test_mul_examples():
    assert ts_mul(TimeSeries([1, 1, 0]), TimeSeries([1, -1, 0])).to_list() == [1, 0, -1]
    t = TimeSeries.variable(3)
    assert ts_mul(t, t).to_list() == [0, 0, 1, 0]
    ep = TimeSeries([Fraction(1, math.factorial(k)) for k in range(5)])
    em = TimeSeries([Fraction((-1) ** k, math.factorial(k)) for k in range(5)])
    assert ts_mul(ep, em).to_list() == [1, 0, 0, 0, 0]


def test_sin_cos_of_t():
    s, c = ts_sin_cos(TimeSeries([0.0, 1.0, 0.0, 0.0]))
    assert close(s, [0, 1, 0, -1 / 6], 1e-16)
    assert close(c, [1, 0, -0.5, 0], 1e-16)


def test_sin_cos_of_constant():
    s, c = ts_sin_cos(TimeSeries([math.pi / 2, 0.0]))
    assert close(s, [1, 0], 1e-16) and close(c, [0, 0], 1e-16)


def test_sin_of_exp_matches_symbolic():
    u = TimeSeries([1.0, -1.0, 0.5, -1 / 6])
    s, _ = ts_sin_cos(u)
    want = [E.evaluate(c, 0.0) for c in E.t_taylor_coeffs(E.parse("sin(exp(-t))"), 3)]
    assert close(s, want, 1e-13)


def test_exp_examples():
    assert close(ts_exp(TimeSeries([0.0, 1.0, 0.0, 0.0, 0.0])), [1, 1, 1 / 2, 1 / 6, 1 / 24], 1e-16)
    assert ts_exp(TimeSeries([0.0] * 4)).to_list() == [1, 0, 0, 0]


def test_eval():
    u = TimeSeries([Fraction(1, math.factorial(k)) for k in range(16)])
    rem = sum(1 / math.factorial(k) for k in range(16, 30))
    assert abs(float(ts_eval(u, 1)) - math.e) == pytest.approx(rem, rel=1e-6)
    assert ts_eval(TimeSeries([3, 5, 7]), 0) == 3


def test_eval_example1_profile():
    x = 0.3
    u = TimeSeries([math.sinh(x) * (-2) ** k / math.factorial(k) for k in range(16)])
    want = math.sinh(x) * sum((-2) ** k / math.factorial(k) for k in range(16))
    assert ts_eval(u, 1.0) == pytest.approx(want, rel=1e-14)


def test_array_coefficients():
    xs = np.linspace(0, 1, 5)
    u = TimeSeries([xs, np.ones(5), np.zeros(5)])
    s, c = ts_sin_cos(u)
    np.testing.assert_allclose(s[0], np.sin(xs))
    np.testing.assert_allclose(s[1], np.cos(xs))
    assert s[1].dtype == float


def test_pow_and_deriv():
    u = TimeSeries([1, 1, 0, 0])
    assert ts_pow(u, 3).to_list() == [1, 3, 3, 1]
    assert u.deriv().to_list() == [1, 0, 0]
    with pytest.raises(ValueError):
        ts_pow(u, 0)


# -- properties ------------------------------------------------------------

@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10).flatmap(series))
def test_sin_squared_plus_cos_squared(u):
    s, c = ts_sin_cos(u)
    one = ts_mul(s, s) + ts_mul(c, c)
    assert close(one, [1] + [0] * u.order, 1e-12)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10).flatmap(series))
def test_exp_group_property(u):
    p = ts_mul(ts_exp(u), ts_exp(-u))
    assert close(p, [1] + [0] * u.order, 1e-13 * max(1.0, max(abs(v) for v in ts_exp(u)) ** 2))


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 8).flatmap(lambda n: st.tuples(series(n), series(n), series(n))))
def test_cauchy_product_associative_and_commutative(abc):
    a, b, c = abc
    left = ts_mul(ts_mul(a, b), c)
    right = ts_mul(a, ts_mul(b, c))
    for k in range(a.order + 1):
        mag = sum(abs(a[i]) * abs(b[j]) * abs(c[k - i - j]) for i in range(k + 1) for j in range(k + 1 - i))
        assert abs(left[k] - right[k]) <= 1e-14 * max(mag, 1e-300) + 1e-300
    assert close(ts_mul(a, b), ts_mul(b, a), 1e-14 * 16)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 10).flatmap(series))
def test_sin_derivative_consistency(u):
    # s' = c u' coefficientwise, up to the truncation order of the derivative
    s, c = ts_sin_cos(u)
    lhs = s.deriv()
    rhs = ts_mul(c.truncate(u.order - 1), u.deriv())
    scale = max(1.0, max(abs(v) for v in rhs), max(abs(v) for v in lhs))
    assert close(lhs, rhs, 1e-13 * scale)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 8).flatmap(lambda n: series(n, st.fractions(-2, 2, max_denominator=6))))
def test_recurrences_exact_in_rational_arithmetic(u):
    # with rational u_k the exp recurrence is exact once e_0 is fixed; e' = e u'
    u = TimeSeries([Fraction(0)] + list(u)[1:])
    e = ts_exp(u)
    assert e.deriv().to_list() == ts_mul(e.truncate(u.order - 1), u.deriv()).to_list()
