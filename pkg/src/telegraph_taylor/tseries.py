"""Truncated power series in t over an abstract coefficient algebra.

A :class:`TimeSeries` holds plain coefficients ``c_0..c_N`` of
``sum c_k t^k``.  Coefficients may be anything supporting ``+``, unary ``-``,
multiplication by a scalar and by each other: Python numbers, fractions,
numpy arrays, or the spatial fields of :mod:`telegraph_taylor.spatial`.

The elementary-function compositions use the recurrences obtained from
``s' = c u'``, ``c' = -s u'`` and ``e' = e u'``.  Each recurrence step is also
exposed on its own (:func:`sin_cos_step`, :func:`exp_step`,
:func:`cauchy_step`) so a caller can build a composition one order at a time
while the underlying series is still being filled in.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Callable, List, Sequence, Tuple

import numpy as np


class OrderMismatch(ValueError):
    """Arithmetic between series truncated at different orders."""


def is_zero(c: Any, tol: float = 1e-14) -> bool:
    """Zero test for a coefficient: structural for fields, ``tol`` for numbers."""
    if hasattr(c, "is_zero"):
        return c.is_zero()
    if isinstance(c, np.ndarray):
        return bool(np.all(np.abs(c) <= tol))
    return abs(c) <= tol


_AT_ZERO = {"sin": Fraction(0), "cos": Fraction(1), "exp": Fraction(1)}


def _elementary(name: str, c: Any):
    meth = getattr(c, name, None)
    if callable(meth):
        return meth()
    if isinstance(c, (int, Fraction)):
        if c == 0:
            return _AT_ZERO[name]
        c = float(c)
    return getattr(np, name)(c)


def _scal(w: Fraction, v):
    # numpy would turn a Fraction factor into an object array
    if isinstance(v, (np.ndarray, float)):
        return float(w) * v
    return w * v


def cauchy_step(a: Sequence, b: Sequence, k: int):
    """Coefficient k of the product: ``sum_{j=0..k} a_j b_{k-j}``."""
    acc = a[0] * b[k]
    for j in range(1, k + 1):
        acc = acc + a[j] * b[k - j]
    return acc


def sin_cos_step(u: Sequence, s: Sequence, c: Sequence, k: int):
    """Coefficient k >= 1 of (sin u, cos u) from u_1..u_k, s_0..s_{k-1}, c_0..c_{k-1}."""
    sk = None
    ck = None
    for j in range(1, k + 1):
        w = Fraction(j, k)
        ds = _scal(w, u[j] * c[k - j])
        dc = _scal(w, u[j] * s[k - j])
        sk = ds if sk is None else sk + ds
        ck = dc if ck is None else ck + dc
    return sk, -ck


def exp_step(u: Sequence, e: Sequence, k: int):
    """Coefficient k >= 1 of exp(u) from u_1..u_k and e_0..e_{k-1}."""
    acc = None
    for j in range(1, k + 1):
        d = _scal(Fraction(j, k), u[j] * e[k - j])
        acc = d if acc is None else acc + d
    return acc


class TimeSeries:
    """Truncated series ``sum_{k<=N} c_k t^k`` with truncation-closed arithmetic."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        coeffs = tuple(coeffs)
        if not coeffs:
            raise ValueError("a series needs at least the constant coefficient")
        self.coeffs = coeffs

    @classmethod
    def constant(cls, value, order: int, zero=0):
        return cls((value,) + (zero,) * order)

    @classmethod
    def variable(cls, order: int):
        """The series ``t`` (requires order >= 1)."""
        if order < 1:
            raise ValueError("order must be >= 1 to represent t")
        return cls((0, 1) + (0,) * (order - 1))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k]

    def __iter__(self):
        return iter(self.coeffs)

    def __repr__(self):
        return f"TimeSeries({list(self.coeffs)!r})"

    def _check(self, other: "TimeSeries"):
        if other.order != self.order:
            raise OrderMismatch(f"orders differ: {self.order} vs {other.order}")

    def __add__(self, other):
        if not isinstance(other, TimeSeries):
            return NotImplemented
        self._check(other)
        return TimeSeries(a + b for a, b in zip(self.coeffs, other.coeffs))

    def __neg__(self):
        return TimeSeries(-a for a in self.coeffs)

    def __sub__(self, other):
        if not isinstance(other, TimeSeries):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, TimeSeries):
            return ts_mul(self, other)
        return TimeSeries(a * other for a in self.coeffs)

    def __rmul__(self, other):
        if isinstance(other, TimeSeries):  # pragma: no cover
            return ts_mul(other, self)
        return TimeSeries(other * a for a in self.coeffs)

    def __call__(self, t):
        return ts_eval(self, t)

    def truncate(self, order: int) -> "TimeSeries":
        if order > self.order:
            raise OrderMismatch(f"cannot extend order {self.order} to {order}")
        return TimeSeries(self.coeffs[: order + 1])

    def deriv(self) -> "TimeSeries":
        """d/dt, one order lower."""
        if self.order == 0:
            raise OrderMismatch("derivative of an order-0 series is undefined")
        return TimeSeries((k + 1) * self.coeffs[k + 1] for k in range(self.order))

    def to_list(self) -> list:
        return list(self.coeffs)


def ts_add(u: TimeSeries, v: TimeSeries) -> TimeSeries:
    return u + v


def ts_neg(u: TimeSeries) -> TimeSeries:
    return -u


def ts_scale(u: TimeSeries, r) -> TimeSeries:
    """Multiply every coefficient by the scalar (or coefficient-algebra value) ``r``."""
    if isinstance(r, TimeSeries):
        raise TypeError("use ts_mul for series products")
    return TimeSeries(r * a for a in u.coeffs)


def ts_mul(u: TimeSeries, v: TimeSeries) -> TimeSeries:
    """Truncated Cauchy product."""
    u._check(v)
    a, b = u.coeffs, v.coeffs
    return TimeSeries(cauchy_step(a, b, k) for k in range(len(a)))


def ts_sin_cos(u: TimeSeries) -> Tuple[TimeSeries, TimeSeries]:
    """(sin u, cos u) by the composition recurrences."""
    s: List = [_elementary("sin", u[0])]
    c: List = [_elementary("cos", u[0])]
    for k in range(1, len(u)):
        sk, ck = sin_cos_step(u.coeffs, s, c, k)
        s.append(sk)
        c.append(ck)
    return TimeSeries(s), TimeSeries(c)


def ts_exp(u: TimeSeries) -> TimeSeries:
    e: List = [_elementary("exp", u[0])]
    for k in range(1, len(u)):
        e.append(exp_step(u.coeffs, e, k))
    return TimeSeries(e)


def ts_pow(u: TimeSeries, m: int) -> TimeSeries:
    """u**m for integer m >= 1 by repeated Cauchy products."""
    if m < 1:
        raise ValueError("power must be >= 1")
    out = u
    for _ in range(m - 1):
        out = ts_mul(out, u)
    return out


def ts_eval(u: TimeSeries, t):
    """Horner evaluation of the truncated series at ``t``."""
    acc = u.coeffs[-1]
    for c in reversed(u.coeffs[:-1]):
        acc = acc * t + c
    return acc


def from_function(fn: Callable[[int], Any], order: int) -> TimeSeries:
    return TimeSeries(fn(k) for k in range(order + 1))
