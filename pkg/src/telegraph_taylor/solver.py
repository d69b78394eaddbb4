"""Time-Taylor series solution of the telegraph equation

    w_tt + 2 alpha w_t + beta^2 w = w_xx + h(x, t) + g(w),
    w(x, 0) = h0(x),  w_t(x, 0) = h1(x).

Writing ``w = sum c_k(x) t^k`` and matching powers of t in ``w_tt = G[w]``
gives, for k >= 0,

    (k+1)(k+2) c_{k+2} = -2 alpha (k+1) c_{k+1} - beta^2 c_k + (c_k)_xx
                         + h_k + [g(w)]_k

where ``h_k`` are the t-Taylor coefficients of the forcing and ``[g(w)]_k``
is coefficient k of the composed series, which only involves c_0..c_k.
The factorial-scaled coefficients ``a_k = k! c_k`` are available from
:meth:`SeriesSolution.factorial_coeffs`.
"""

from __future__ import annotations

import math
import re
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from . import expr as E
from . import spatial as S
from .tseries import cauchy_step, exp_step, sin_cos_step, _elementary, _scal

Number = Union[int, float, Fraction]


# ---------------------------------------------------------------------------
# Nonlinearities g(w)
# ---------------------------------------------------------------------------


class NonlinSpec:
    """A nonlinearity ``g(w)`` from a closed set of forms.

    Every form supplies an online series evaluator: :meth:`online` returns an
    object whose ``next(w)`` yields ``[g(w)]_k`` given ``w = (c_0, .., c_k)``
    with ``k = len(w) - 1``.  Calls must come in order k = 0, 1, 2, ...
    ``next`` returns ``None`` for an identically zero coefficient.
    """

    def online(self):
        raise NotImplementedError

    def apply(self, w):
        """Pointwise value ``g(w)`` for floats or numpy arrays."""
        raise NotImplementedError

    def to_text(self) -> str:
        raise NotImplementedError

    def is_zero(self) -> bool:
        return False

    def __str__(self):
        return self.to_text()


def _fmt_scale(scale) -> str:
    if scale == 1:
        return ""
    if scale == -1:
        return "-"
    s = str(scale) if isinstance(scale, Fraction) else repr(float(scale))
    return f"{s}*"


class _ZeroOnline:
    def next(self, w):
        return None


@dataclass(frozen=True)
class Zero(NonlinSpec):
    def online(self):
        return _ZeroOnline()

    def apply(self, w):
        return 0.0 * w

    def to_text(self):
        return "0"

    def is_zero(self):
        return True


class _LinearOnline:
    def __init__(self, lam):
        self.lam = lam

    def next(self, w):
        return _scal(self.lam, w[-1])


@dataclass(frozen=True)
class Linear(NonlinSpec):
    """``g(w) = lam * w``."""

    lam: Number

    def online(self):
        return _LinearOnline(self.lam)

    def apply(self, w):
        return float(self.lam) * w

    def to_text(self):
        return f"{_fmt_scale(self.lam)}w"


class _PowerOnline:
    def __init__(self, m, scale):
        self.m = m
        self.scale = scale
        self.powers: List[list] = [[] for _ in range(m - 1)]  # w^2 .. w^m

    def next(self, w):
        k = len(w) - 1
        prev = w
        for p in self.powers:
            p.append(cauchy_step(prev, w, k))
            prev = p
        return _scal(self.scale, prev[k])


@dataclass(frozen=True)
class Power(NonlinSpec):
    """``g(w) = scale * w**m`` with integer ``m >= 2``."""

    m: int
    scale: Number = 1

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 2:
            raise ValueError(f"power must be an integer >= 2, got {self.m}")

    def online(self):
        return _PowerOnline(int(self.m), self.scale)

    def apply(self, w):
        return float(self.scale) * w ** int(self.m)

    def to_text(self):
        return f"{_fmt_scale(self.scale)}w^{self.m}"


class _SinCosOnline:
    def __init__(self, scale, want_sin):
        self.scale = scale
        self.want_sin = want_sin
        self.s: list = []
        self.c: list = []

    def next(self, w):
        k = len(w) - 1
        if k == 0:
            self.s.append(_elementary("sin", w[0]))
            self.c.append(_elementary("cos", w[0]))
        else:
            sk, ck = sin_cos_step(w, self.s, self.c, k)
            self.s.append(sk)
            self.c.append(ck)
        return _scal(self.scale, (self.s if self.want_sin else self.c)[k])


@dataclass(frozen=True)
class SinW(NonlinSpec):
    """``g(w) = scale * sin(w)``."""

    scale: Number = 1

    def online(self):
        return _SinCosOnline(self.scale, True)

    def apply(self, w):
        return float(self.scale) * np.sin(w)

    def to_text(self):
        return f"{_fmt_scale(self.scale)}sin(w)"


@dataclass(frozen=True)
class CosW(NonlinSpec):
    """``g(w) = scale * cos(w)``."""

    scale: Number = 1

    def online(self):
        return _SinCosOnline(self.scale, False)

    def apply(self, w):
        return float(self.scale) * np.cos(w)

    def to_text(self):
        return f"{_fmt_scale(self.scale)}cos(w)"


class _ExpOnline:
    def __init__(self, scale):
        self.scale = scale
        self.e: list = []

    def next(self, w):
        k = len(w) - 1
        self.e.append(_elementary("exp", w[0]) if k == 0 else exp_step(w, self.e, k))
        return _scal(self.scale, self.e[k])


@dataclass(frozen=True)
class ExpW(NonlinSpec):
    """``g(w) = scale * exp(w)``."""

    scale: Number = 1

    def online(self):
        return _ExpOnline(self.scale)

    def apply(self, w):
        return float(self.scale) * np.exp(w)

    def to_text(self):
        return f"{_fmt_scale(self.scale)}exp(w)"


class _SumOnline:
    def __init__(self, parts):
        self.parts = parts

    def next(self, w):
        acc = None
        for p in self.parts:
            v = p.next(w)
            if v is not None:
                acc = v if acc is None else acc + v
        return acc


@dataclass(frozen=True)
class Sum(NonlinSpec):
    terms: Tuple[NonlinSpec, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))

    def online(self):
        return _SumOnline([t.online() for t in self.terms])

    def apply(self, w):
        out = 0.0 * w
        for t in self.terms:
            out = out + t.apply(w)
        return out

    def to_text(self):
        live = [t for t in self.terms if not t.is_zero()]
        if not live:
            return "0"
        text = live[0].to_text()
        for t in live[1:]:
            s = t.to_text()
            text += f" - {s[1:]}" if s.startswith("-") else f" + {s}"
        return text

    def is_zero(self):
        return all(t.is_zero() for t in self.terms)


_NL_TERM = re.compile(
    r"\s*(?P<sign>[+-])?\s*(?:(?P<coef>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?(?:\s*/\s*\d+)?)\s*\*?\s*)?"
    r"(?P<body>sin\(\s*w\s*\)|cos\(\s*w\s*\)|exp\(\s*w\s*\)|w(?:\s*(?:\^|\*\*)\s*(?P<pow>\d+))?)\s*"
)


def parse_nonlinearity(text: str) -> NonlinSpec:
    """Parse ``g(w)`` text such as ``-2*sin(w)`` or ``w^3 - 1/2*w``.

    Each term is an optional rational coefficient times one of ``w``,
    ``w^m``, ``sin(w)``, ``cos(w)``, ``exp(w)``.  ``0`` means no nonlinearity.
    """
    from .parser import ParseError

    src = text.strip()
    if src in ("", "0"):
        return Zero()
    terms = []
    pos = 0
    while pos < len(src):
        m = _NL_TERM.match(src, pos)
        if not m or m.end() == pos or (terms and not m.group("sign")):
            raise ParseError(f"cannot parse nonlinearity {text!r} at {pos}")
        coef = Fraction(m.group("coef").replace(" ", "")) if m.group("coef") else Fraction(1)
        if m.group("sign") == "-":
            coef = -coef
        body = m.group("body").replace(" ", "")
        if body.startswith("sin"):
            terms.append(SinW(coef))
        elif body.startswith("cos"):
            terms.append(CosW(coef))
        elif body.startswith("exp"):
            terms.append(ExpW(coef))
        else:
            p = int(m.group("pow") or 1)
            if p == 0:
                raise ParseError("w^0 is a constant; put it in the forcing")
            terms.append(Linear(coef) if p == 1 else Power(p, coef))
        pos = m.end()
    return terms[0] if len(terms) == 1 else Sum(tuple(terms))


# ---------------------------------------------------------------------------
# Problem and solution
# ---------------------------------------------------------------------------


def _as_expr(v) -> E.Expr:
    if isinstance(v, E.Expr):
        return v
    if isinstance(v, str):
        return E.parse(v)
    return E.Const(E.as_number(v))


@dataclass(frozen=True)
class TelegraphProblem:
    """Initial-value problem for the telegraph equation.

    Expression fields accept :class:`Expr` or text in the expression grammar.
    ``boundary`` holds optional ``(g0(t), g1(t))`` edge data; it is stored for
    reference only, since the series construction never uses it.
    """

    alpha: Number
    beta: Number
    forcing: E.Expr
    h0: E.Expr
    h1: E.Expr
    domain: S.Domain
    order: int = 15
    nonlinearity: NonlinSpec = field(default_factory=Zero)
    boundary: Optional[Tuple[E.Expr, E.Expr]] = None
    name: str = ""

    def __post_init__(self):
        set_ = lambda k, v: object.__setattr__(self, k, v)  # noqa: E731
        set_("alpha", E.as_number(self.alpha))
        set_("beta", E.as_number(self.beta))
        for k in ("forcing", "h0", "h1"):
            set_(k, _as_expr(getattr(self, k)))
        if isinstance(self.nonlinearity, str):
            set_("nonlinearity", parse_nonlinearity(self.nonlinearity))
        if self.boundary is not None:
            set_("boundary", tuple(_as_expr(b) for b in self.boundary))
        if int(self.order) != self.order or self.order < 2:
            raise ValueError(f"order must be an integer >= 2, got {self.order}")
        set_("order", int(self.order))
        for k in ("h0", "h1"):
            if getattr(self, k).has("t"):
                raise ValueError(f"initial datum {k} must not depend on t")

    def with_order(self, order: int) -> "TelegraphProblem":
        from dataclasses import replace

        return replace(self, order=order)


class SeriesSolution:
    """Truncated series ``w = sum_{k<=N} c_k(x) t^k`` (plain coefficients)."""

    def __init__(self, coeffs: Sequence, problem: TelegraphProblem, backend: str, grid=None):
        self.coeffs = tuple(coeffs)
        self.problem = problem
        self.backend = backend
        self.grid = grid
        self._d2 = None

    def __repr__(self):
        return f"SeriesSolution(order={self.order}, backend={self.backend!r})"

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def domain(self) -> S.Domain:
        return self.problem.domain

    def truncate(self, n: int) -> "SeriesSolution":
        if not 0 <= n <= self.order:
            raise ValueError(f"cannot truncate order {self.order} at {n}")
        return SeriesSolution(self.coeffs[: n + 1], self.problem, self.backend, self.grid)

    def factorial_coeffs(self) -> list:
        """``a_k = k! c_k``."""
        return [c * math.factorial(k) for k, c in enumerate(self.coeffs)]

    def coeff_values(self, xs) -> np.ndarray:
        """Array of shape ``(N+1,) + shape(xs)`` with ``c_k(xs)``."""
        xs = np.asarray(xs, dtype=float)
        return np.array([c.values_at(xs) for c in self.coeffs])

    def eval(self, x, t):
        """Horner evaluation; ``x`` and ``t`` broadcast against each other."""
        x = np.asarray(x, dtype=float)
        t = np.asarray(t, dtype=float)
        x, t = np.broadcast_arrays(x, t)
        cv = self.coeff_values(x)
        acc = cv[-1]
        for k in range(self.order - 1, -1, -1):
            acc = acc * t + cv[k]
        return float(acc) if acc.ndim == 0 else acc

    __call__ = eval

    def precise_eval(self, x, t, dps: int = 50):
        """High-precision value (mpmath ``mpf``).  Symbolic backend only."""
        import mpmath

        if self.backend != "symbolic":
            raise TypeError("precise evaluation needs the symbolic backend")
        with mpmath.workdps(dps):
            lib = E.mpmath_lib()
            xm, tm = mpmath.mpf(x), mpmath.mpf(t)
            acc = mpmath.mpf(0)
            for c in reversed(self.coeffs):
                acc = acc * tm + c.precise_at(xm, lib)
            return +acc

    def residual(self, x, t):
        """Defect of the truncated series in the PDE at ``(x, t)``."""
        p = self.problem
        x = np.asarray(x, dtype=float)
        t = np.asarray(t, dtype=float)
        x, t = np.broadcast_arrays(x, t)
        if self._d2 is None:
            self._d2 = [c.d2x() for c in self.coeffs]
        cv = self.coeff_values(x)
        dv = np.array([c.values_at(x) for c in self._d2])
        n = self.order
        tp = np.array([t**k for k in range(n + 1)])
        w = np.sum(cv * tp, axis=0)
        wt = sum(k * cv[k] * tp[k - 1] for k in range(1, n + 1))
        wtt = sum(k * (k - 1) * cv[k] * tp[k - 2] for k in range(2, n + 1))
        wxx = np.sum(dv * tp, axis=0)
        h = E.evaluate(p.forcing, x, t, lib=E.NUMPY)
        g = p.nonlinearity.apply(w)
        r = wtt + 2 * float(p.alpha) * wt + float(p.beta) ** 2 * w - wxx - h - g
        r = np.asarray(r, dtype=float)
        return float(r) if r.ndim == 0 else r


def _lifter(problem: TelegraphProblem, backend: str, grid_points: int, precision: int):
    if backend == "symbolic":
        return S.SymbolicField, None
    if backend == "grid":
        d = problem.domain
        grid = S.chebyshev_grid(grid_points, d.x_lo, d.x_hi, precision)
        return (lambda e: S.GridField.from_expr(e, grid)), grid
    raise ValueError(f"unknown backend {backend!r}; expected 'symbolic' or 'grid'")


def solve(
    problem: TelegraphProblem,
    backend: str = "symbolic",
    grid_points: int = 64,
    precision: int = S.DEFAULT_PRECISION,
) -> SeriesSolution:
    """Compute c_0..c_N for ``problem`` on the chosen backend.

    ``grid_points`` and ``precision`` (bits per node value) apply to the grid
    backend only.
    """
    if problem.boundary is not None:
        warnings.warn(
            "boundary data is stored but not enforced by the series construction",
            UserWarning,
            stacklevel=2,
        )
    lift, grid = _lifter(problem, backend, grid_points, precision)
    n = problem.order
    forcing = E.t_taylor_coeffs(problem.forcing, n - 2)
    H = [None if E.is_zero(h) else lift(h) for h in forcing]
    c = [lift(problem.h0), lift(problem.h1)]
    online = problem.nonlinearity.online()
    two_alpha = 2 * problem.alpha
    beta2 = problem.beta * problem.beta
    for k in range(n - 1):
        g = c[k].d2x()
        if two_alpha != 0:
            g = g - c[k + 1] * (two_alpha * (k + 1))
        if beta2 != 0:
            g = g - c[k] * beta2
        if H[k] is not None:
            g = g + H[k]
        gk = online.next(c[: k + 1])
        if gk is not None:
            g = g + gk
        c.append(g * Fraction(1, (k + 1) * (k + 2)))
    return SeriesSolution(c, problem, backend, grid)


def eval_solution(sol: SeriesSolution, x, t):
    return sol.eval(x, t)


def residual(sol: SeriesSolution, x, t):
    return sol.residual(x, t)
