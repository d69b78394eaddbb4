"""Functions of x: the coefficient algebra of the time series.

Two backends share one interface:

* :class:`SymbolicField` wraps an x-only :class:`~telegraph_taylor.expr.Expr`
  and is exact up to the constants it was built from.
* :class:`GridField` stores values on Chebyshev-Gauss-Lobatto nodes and
  differentiates with the collocation matrix.

Nested second derivatives amplify rounding noise in the high Chebyshev modes
by roughly ``M**4`` per application, so a float64 grid loses every digit
after three or four nestings.  Grid values are therefore kept in binary
multiprecision (gmpy2 ``mpfr``, 256 bits by default).  Pass ``precision=53``
to get a plain float64 grid.  Queries (interpolation, norms) run in float64.

Mixing the backends in arithmetic raises :class:`BackendMismatch`.
"""

from __future__ import annotations

import contextlib
import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import gmpy2
import numpy as np

from . import expr as E

DEFAULT_PRECISION = 256
MIN_NODES = 8
SUP_SAMPLES = 2001


class BackendMismatch(TypeError):
    """Arithmetic between a symbolic and a grid field, or two different grids."""


class NumericalInstability(ArithmeticError):
    """Non-finite values appeared in a grid field."""


class QuadratureError(ArithmeticError):
    """Adaptive quadrature hit its depth cap without converging."""


@dataclass(frozen=True)
class Domain:
    """Spatial interval ``(x_lo, x_hi)`` and time horizon ``T``."""

    x_lo: float
    x_hi: float
    T: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.x_lo) and math.isfinite(self.x_hi) and self.x_lo < self.x_hi):
            raise ValueError(f"need x_lo < x_hi, got ({self.x_lo}, {self.x_hi})")
        if not (math.isfinite(self.T) and self.T > 0):
            raise ValueError(f"need T > 0, got {self.T}")

    @property
    def length(self) -> float:
        return self.x_hi - self.x_lo


# ---------------------------------------------------------------------------
# Quadrature
# ---------------------------------------------------------------------------


def adaptive_simpson(f, a: float, b: float, tol: float = 1e-12, max_depth: int = 30) -> float:
    """Adaptive Simpson rule with relative tolerance ``tol``.

    ``f`` must accept numpy arrays.  All panels at one refinement level are
    evaluated in a single call.
    """
    n0 = 16
    edges = np.linspace(a, b, n0 + 1)
    lo, hi = edges[:-1], edges[1:]
    flo, fhi, fm = f(lo), f(hi), f(0.5 * (lo + hi))
    whole = (hi - lo) / 6.0 * (flo + 4.0 * fm + fhi)
    tol_abs = tol * abs(float(whole.sum()))
    eps = tol_abs * (hi - lo) / (b - a)
    total = 0.0
    for _ in range(max_depth):
        mid = 0.5 * (lo + hi)
        flm = f(0.5 * (lo + mid))
        frm = f(0.5 * (mid + hi))
        left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fm)
        right = (hi - mid) / 6.0 * (fm + 4.0 * frm + fhi)
        delta = left + right - whole
        done = np.abs(delta) <= 15.0 * eps
        total += float(np.sum((left + right + delta / 15.0)[done]))
        if done.all():
            return total
        k = ~done
        lo, hi = np.concatenate([lo[k], mid[k]]), np.concatenate([mid[k], hi[k]])
        flo, fhi = np.concatenate([flo[k], fm[k]]), np.concatenate([fm[k], fhi[k]])
        fm = np.concatenate([flm[k], frm[k]])
        whole = np.concatenate([left[k], right[k]])
        eps = np.concatenate([eps[k], eps[k]]) / 2.0
    raise QuadratureError(f"adaptive Simpson did not converge within depth {max_depth}")


def _clenshaw_curtis(n: int) -> np.ndarray:
    """Clenshaw-Curtis weights on [-1, 1] for the n+1 nodes cos(j pi / n)."""
    theta = np.pi * np.arange(n + 1) / n
    w = np.zeros(n + 1)
    v = np.ones(n - 1)
    inner = theta[1:-1]
    if n % 2 == 0:
        w[0] = w[n] = 1.0 / (n * n - 1)
        for k in range(1, n // 2):
            v -= 2.0 * np.cos(2 * k * inner) / (4 * k * k - 1)
        v -= np.cos(n * inner) / (n * n - 1)
    else:
        w[0] = w[n] = 1.0 / (n * n)
        for k in range(1, (n - 1) // 2 + 1):
            v -= 2.0 * np.cos(2 * k * inner) / (4 * k * k - 1)
    w[1:-1] = 2.0 * v / n
    return w


# ---------------------------------------------------------------------------
# Chebyshev grid
# ---------------------------------------------------------------------------


def _vectorize(fn):
    def apply(a):
        if isinstance(a, np.ndarray):
            return np.array([fn(v) for v in a], dtype=object)
        return fn(a)

    return apply


class ChebyshevGrid:
    """Chebyshev-Gauss-Lobatto nodes on ``[x_lo, x_hi]`` (ascending) with the
    collocation differentiation matrices and quadrature weights.

    Build through :func:`chebyshev_grid` so instances are shared.
    """

    def __init__(self, m: int, x_lo: float, x_hi: float, precision: int = DEFAULT_PRECISION):
        if m < MIN_NODES:
            raise ValueError(f"need at least {MIN_NODES} nodes, got {m}")
        Domain(x_lo, x_hi)
        self.m = m
        self.x_lo = float(x_lo)
        self.x_hi = float(x_hi)
        self.precision = int(precision)
        self.multiprecision = self.precision > 53
        n = m - 1
        sign = np.array([(-1.0) ** j for j in range(m)])
        self.bary = sign.copy()
        self.bary[0] *= 0.5
        self.bary[-1] *= 0.5
        cc = _clenshaw_curtis(n)[::-1]
        self.cc_weights = cc * (self.x_hi - self.x_lo) / 2.0
        with self.context():
            if self.multiprecision:
                pi = gmpy2.const_pi()
                lo, hi = gmpy2.mpfr(self.x_lo), gmpy2.mpfr(self.x_hi)
                nodes = [lo + (hi - lo) * (1 - gmpy2.cos(pi * j / n)) / 2 for j in range(m)]
                nodes[0], nodes[-1] = lo, hi
                self.nodes = np.array(nodes, dtype=object)
                bw = [gmpy2.mpfr(float(b)) for b in self.bary]
                zero = gmpy2.mpfr(0)
            else:
                j = np.arange(m)
                self.nodes = self.x_lo + (self.x_hi - self.x_lo) * (1 - np.cos(np.pi * j / n)) / 2
                self.nodes[0], self.nodes[-1] = self.x_lo, self.x_hi
                bw = list(self.bary)
                zero = 0.0
            dtype = object if self.multiprecision else float
            D = np.empty((m, m), dtype=dtype)
            for i in range(m):
                row = zero
                for k in range(m):
                    if i != k:
                        D[i, k] = (bw[k] / bw[i]) / (self.nodes[i] - self.nodes[k])
                        row = row + D[i, k]
                D[i, i] = -row
            self.D = D
            self.D2 = D.dot(D)
        self.nodes_float = np.array([float(v) for v in self.nodes])

    def context(self):
        if self.multiprecision:
            return gmpy2.context(gmpy2.get_context(), precision=self.precision)
        return contextlib.nullcontext()

    def lib(self) -> E.Lib:
        if not self.multiprecision:
            return E.NUMPY

        def num(v):
            if isinstance(v, Fraction):
                return gmpy2.mpfr(gmpy2.mpq(v.numerator, v.denominator))
            return gmpy2.mpfr(v)

        return E.Lib(
            _vectorize(gmpy2.sin), _vectorize(gmpy2.cos), _vectorize(gmpy2.sinh),
            _vectorize(gmpy2.cosh), _vectorize(gmpy2.exp), gmpy2.const_pi, num,
        )

    def const(self, v):
        v = E.as_number(v)
        if not self.multiprecision:
            return float(v)
        with self.context():
            if isinstance(v, Fraction):
                return gmpy2.mpfr(gmpy2.mpq(v.numerator, v.denominator))
            return gmpy2.mpfr(v)

    def sample(self, e: E.Expr) -> np.ndarray:
        if e.has("t"):
            raise ValueError(f"expected an x-only expression, got {e}")
        with self.context():
            vals = E.evaluate(e, self.nodes, 0, lib=self.lib())
            if not isinstance(vals, np.ndarray):
                vals = np.array([vals] * self.m, dtype=object if self.multiprecision else float)
        return vals

    def apply(self, name: str, values: np.ndarray) -> np.ndarray:
        if not self.multiprecision:
            return getattr(np, name)(values)
        with self.context():
            return _vectorize(getattr(gmpy2, name))(values)

    def to_float(self, values: np.ndarray) -> np.ndarray:
        if not self.multiprecision:
            return np.asarray(values, dtype=float)
        return np.array([float(v) for v in values])

    def all_finite(self, values: np.ndarray) -> bool:
        if not self.multiprecision:
            return bool(np.all(np.isfinite(values)))
        return all(gmpy2.is_finite(v) for v in values)

    def interpolate(self, values_float: np.ndarray, xs) -> np.ndarray:
        """Barycentric interpolation at ``xs`` (float64); exact at the nodes."""
        xs = np.atleast_1d(np.asarray(xs, dtype=float))
        span = self.x_hi - self.x_lo
        if np.any(xs < self.x_lo - 1e-12 * span) or np.any(xs > self.x_hi + 1e-12 * span):
            raise ValueError(f"x outside the grid interval [{self.x_lo}, {self.x_hi}]")
        diff = xs[:, None] - self.nodes_float[None, :]
        exact = diff == 0
        with np.errstate(divide="ignore", invalid="ignore"):
            q = self.bary[None, :] / diff
            out = (q @ values_float) / q.sum(axis=1)
        hit_rows = exact.any(axis=1)
        if hit_rows.any():
            out[hit_rows] = values_float[np.argmax(exact[hit_rows], axis=1)]
        return out


_GRIDS: dict = {}
_GRIDS_LOCK = threading.Lock()


def chebyshev_grid(m: int, x_lo: float, x_hi: float, precision: int = DEFAULT_PRECISION) -> ChebyshevGrid:
    """Shared grid for ``(m, x_lo, x_hi, precision)``; built once under a lock."""
    key = (int(m), float(x_lo), float(x_hi), int(precision))
    with _GRIDS_LOCK:
        grid = _GRIDS.get(key)
        if grid is None:
            grid = _GRIDS[key] = ChebyshevGrid(*key)
    return grid


# ---------------------------------------------------------------------------
# Fields
# ---------------------------------------------------------------------------


def _is_scalar(v) -> bool:
    return isinstance(v, (int, float, Fraction, np.integer, np.floating)) and not isinstance(v, bool)


def _check_domain(f, domain):
    if domain is None:
        return
    if not (math.isclose(domain.x_lo, f.grid.x_lo) and math.isclose(domain.x_hi, f.grid.x_hi)):
        raise ValueError("domain does not match the grid interval")


class SymbolicField:
    """Exact x-only expression."""

    __slots__ = ("expr", "_fn")

    backend = "symbolic"

    def __init__(self, expr):
        if isinstance(expr, str):
            expr = E.parse(expr)
        expr = E.simplify(expr)
        if expr.has("t"):
            raise ValueError(f"spatial field must not depend on t: {expr}")
        self.expr = expr

    def __repr__(self):
        return f"SymbolicField({str(self.expr)!r})"

    def _other(self, other):
        if isinstance(other, SymbolicField):
            return other.expr
        if _is_scalar(other):
            return E.Const(E.as_number(other))
        if isinstance(other, GridField):
            raise BackendMismatch("cannot combine symbolic and grid fields")
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return SymbolicField(E.Add(self.expr, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return SymbolicField(E.Add(self.expr, E.Neg(o)))

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return SymbolicField(E.Add(o, E.Neg(self.expr)))

    def __neg__(self):
        return SymbolicField(E.Neg(self.expr))

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return SymbolicField(E.Mul(o, self.expr))

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, SymbolicField) and self.expr == other.expr

    def __hash__(self):
        return hash(self.expr)

    def is_zero(self) -> bool:
        return E.is_zero(self.expr)

    def d2x(self) -> "SymbolicField":
        return SymbolicField(E.diff(E.diff(self.expr, "x"), "x"))

    def pointwise(self, fn: str) -> "SymbolicField":
        if fn not in ("sin", "cos", "exp", "sinh", "cosh"):
            raise ValueError(f"unsupported pointwise function {fn!r}")
        return SymbolicField(E.FUNCS[fn](self.expr))

    def sin(self):
        return self.pointwise("sin")

    def cos(self):
        return self.pointwise("cos")

    def exp(self):
        return self.pointwise("exp")

    def eval_at(self, x: float) -> float:
        return float(E.evaluate(self.expr, float(x), 0.0))

    def values_at(self, xs) -> np.ndarray:
        xs = np.asarray(xs, dtype=float)
        vals = E.evaluate(self.expr, xs, 0.0, lib=E.NUMPY)
        return np.broadcast_to(np.asarray(vals, dtype=float), xs.shape).copy()

    def precise_at(self, x, lib: E.Lib):
        """Evaluate with another number type (e.g. mpmath)."""
        return E.evaluate(self.expr, x, 0, lib=lib)

    def l2_norm(self, domain: Domain) -> float:
        f = lambda xs: self.values_at(xs) ** 2  # noqa: E731
        return math.sqrt(max(adaptive_simpson(f, domain.x_lo, domain.x_hi), 0.0))

    def sup_norm(self, domain: Domain) -> float:
        xs = np.linspace(domain.x_lo, domain.x_hi, SUP_SAMPLES)
        return float(np.max(np.abs(self.values_at(xs))))

    def to_grid(self, grid: ChebyshevGrid) -> "GridField":
        """Explicit conversion to the grid backend."""
        return GridField.from_expr(self.expr, grid)


class GridField:
    """Values at the nodes of a :class:`ChebyshevGrid`."""

    __slots__ = ("grid", "values", "_float")

    backend = "grid"

    def __init__(self, grid: ChebyshevGrid, values):
        values = np.asarray(values, dtype=object if grid.multiprecision else float)
        if values.shape != (grid.m,):
            raise ValueError(f"expected {grid.m} values, got shape {values.shape}")
        if not grid.all_finite(values):
            raise NumericalInstability("non-finite values in grid field")
        self.grid = grid
        self.values = values
        self._float = None

    @classmethod
    def from_expr(cls, e, grid: ChebyshevGrid) -> "GridField":
        if isinstance(e, str):
            e = E.parse(e)
        return cls(grid, grid.sample(E.simplify(e)))

    def __repr__(self):
        return f"GridField(m={self.grid.m}, [{self.grid.x_lo}, {self.grid.x_hi}])"

    def _other(self, other):
        if isinstance(other, GridField):
            if other.grid is not self.grid:
                raise BackendMismatch("fields live on different grids")
            return other.values
        if _is_scalar(other):
            return self.grid.const(other)
        if isinstance(other, SymbolicField):
            raise BackendMismatch("cannot combine grid and symbolic fields")
        return None

    def _new(self, values):
        return GridField(self.grid, values)

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        with self.grid.context():
            return self._new(self.values + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        with self.grid.context():
            return self._new(self.values - o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        with self.grid.context():
            return self._new(o - self.values)

    def __neg__(self):
        # gmpy2 rounds even a negation to the active context precision
        with self.grid.context():
            return self._new(-self.values)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        with self.grid.context():
            return self._new(self.values * o)

    __rmul__ = __mul__

    def is_zero(self, tol: float = 1e-14) -> bool:
        return bool(np.all(np.abs(self.to_float()) <= tol))

    def to_float(self) -> np.ndarray:
        if self._float is None:
            self._float = self.grid.to_float(self.values)
        return self._float

    def d2x(self) -> "GridField":
        with self.grid.context():
            return self._new(self.grid.D2.dot(self.values))

    def pointwise(self, fn: str) -> "GridField":
        if fn not in ("sin", "cos", "exp", "sinh", "cosh"):
            raise ValueError(f"unsupported pointwise function {fn!r}")
        return self._new(self.grid.apply(fn, self.values))

    def sin(self):
        return self.pointwise("sin")

    def cos(self):
        return self.pointwise("cos")

    def exp(self):
        return self.pointwise("exp")

    def eval_at(self, x: float) -> float:
        return float(self.grid.interpolate(self.to_float(), [x])[0])

    def values_at(self, xs) -> np.ndarray:
        xs = np.asarray(xs, dtype=float)
        return self.grid.interpolate(self.to_float(), xs.ravel()).reshape(xs.shape)

    def l2_norm(self, domain: Optional[Domain] = None) -> float:
        _check_domain(self, domain)
        v = self.to_float()
        return math.sqrt(max(float(self.grid.cc_weights @ (v * v)), 0.0))

    def sup_norm(self, domain: Optional[Domain] = None) -> float:
        _check_domain(self, domain)
        xs = np.linspace(self.grid.x_lo, self.grid.x_hi, SUP_SAMPLES)
        return float(np.max(np.abs(self.values_at(xs))))


Field = (SymbolicField, GridField)


def d2x(f):
    """Second x-derivative."""
    return f.d2x()


def pointwise(f, fn: str):
    """Apply ``sin``, ``cos`` or ``exp`` pointwise."""
    return f.pointwise(fn)


def eval_at(f, x: float) -> float:
    return f.eval_at(x)


def l2_norm(f, domain: Domain = None) -> float:
    """``sqrt(integral f^2 dx)`` over the domain's x interval."""
    return f.l2_norm(domain)


def sup_norm(f, domain: Domain = None) -> float:
    """max |f| over 2001 uniform samples."""
    return f.sup_norm(domain)
