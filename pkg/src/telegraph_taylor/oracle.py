"""Reference solutions and error measurement.

* :class:`ExactSolution` wraps a closed form and checks it against the PDE.
* :func:`abs_error` and :func:`error_table` measure the truncated series
  against it (in 50-digit arithmetic for the symbolic backend).
* :func:`fd_reference` is an independent explicit finite-difference solver.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional, Sequence, Tuple

import mpmath
import numpy as np

from . import expr as E
from .solver import SeriesSolution, TelegraphProblem, solve
from .spatial import NumericalInstability

PRECISE_DPS = 50
TABLE_XS = (0.1, 0.3, 0.5, 0.7, 0.9)
TABLE_ORDERS = (10, 11, 12, 13, 14, 15)


class ExactSolutionMismatch(ValueError):
    """A claimed exact solution does not satisfy its problem."""


def pde_defect(problem: TelegraphProblem, w: E.Expr, x, t):
    """``w_tt + 2 alpha w_t + beta^2 w - w_xx - h - g(w)`` for a closed form ``w``."""
    wt = E.diff(w, "t")
    wtt = E.diff(wt, "t")
    wxx = E.diff(E.diff(w, "x"), "x")
    ev = lambda e: np.asarray(E.evaluate(e, x, t, lib=E.NUMPY), dtype=float)  # noqa: E731
    wv = np.broadcast_to(ev(w), np.broadcast(x, t).shape)
    return (
        ev(wtt) + 2 * float(problem.alpha) * ev(wt) + float(problem.beta) ** 2 * wv
        - ev(wxx) - ev(problem.forcing) - problem.nonlinearity.apply(wv)
    )


@dataclass(frozen=True)
class ExactSolution:
    """Closed-form solution ``w(x, t)`` with a short description."""

    expr: E.Expr
    note: str = ""

    def __post_init__(self):
        if isinstance(self.expr, str):
            object.__setattr__(self, "expr", E.parse(self.expr))

    def __call__(self, x, t):
        out = E.evaluate(self.expr, np.asarray(x, dtype=float), np.asarray(t, dtype=float), lib=E.NUMPY)
        out = np.broadcast_to(np.asarray(out, dtype=float), np.broadcast(x, t).shape)
        return float(out) if out.ndim == 0 else out.copy()

    def precise(self, x, t, dps: int = PRECISE_DPS):
        with mpmath.workdps(dps):
            return +E.evaluate(self.expr, mpmath.mpf(x), mpmath.mpf(t), lib=E.mpmath_lib())

    def check(self, problem: TelegraphProblem, points: int = 100, tol: float = 1e-10, seed: int = 0) -> float:
        """Largest PDE defect at ``points`` random interior points and the
        initial-data mismatch; raises :class:`ExactSolutionMismatch` above ``tol``."""
        rng = np.random.default_rng(seed)
        d = problem.domain
        xs = rng.uniform(d.x_lo, d.x_hi, points)
        ts = rng.uniform(0.0, d.T, points)
        defect = float(np.max(np.abs(pde_defect(problem, self.expr, xs, ts))))
        w0 = E.subs(self.expr, "t", 0)
        w1 = E.subs(E.diff(self.expr, "t"), "t", 0)
        for have, want in ((w0, problem.h0), (w1, problem.h1)):
            gap = np.abs(E.evaluate(have, xs, 0.0, lib=E.NUMPY) - E.evaluate(want, xs, 0.0, lib=E.NUMPY))
            defect = max(defect, float(np.max(gap)))
        if not defect < tol:
            raise ExactSolutionMismatch(f"exact solution defect {defect:.3e} exceeds {tol:.0e}")
        return defect


def abs_error(sol: SeriesSolution, exact: ExactSolution, x: float, t: float) -> float:
    """``|w_N(x, t) - w(x, t)|``.

    The symbolic backend evaluates both sides with 50 significant digits so
    that errors far below double-precision rounding of ``w`` stay resolved.
    """
    if sol.backend == "symbolic":
        with mpmath.workdps(PRECISE_DPS):
            return float(abs(sol.precise_eval(x, t, PRECISE_DPS) - exact.precise(x, t, PRECISE_DPS)))
    return abs(sol.eval(x, t) - exact(x, t))


@dataclass
class ErrorTable:
    """Absolute errors ``errors[i, j]`` at ``xs[i]`` for order ``orders[j]``."""

    xs: Tuple[float, ...]
    orders: Tuple[int, ...]
    t: float
    errors: np.ndarray
    name: str = ""
    published: Optional[Dict[float, Dict[int, float]]] = None
    meta: Dict[str, str] = field(default_factory=dict)

    def cell(self, x: float, n: int) -> float:
        return float(self.errors[self.xs.index(x), self.orders.index(n)])

    def rows(self):
        for i, x in enumerate(self.xs):
            yield x, [float(v) for v in self.errors[i]]

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("x," + ",".join(f"n={n}" for n in self.orders) + "\n")
        for x, vals in self.rows():
            buf.write("%.17g," % x + ",".join("%.17g" % v for v in vals) + "\n")
        return buf.getvalue()

    def render(self) -> str:
        """Plain-text table; published values, when present, on a second line."""
        head = f"{'':<10}{'x':>5}" + "".join(f"{'n=%d' % n:>11}" for n in self.orders)
        lines = [f"absolute errors at t = {self.t:g}" + (f" ({self.name})" if self.name else ""), head]
        for x, vals in self.rows():
            lines.append(f"{'computed':<10}{x:>5g}" + "".join(f"{v:>11.2E}" for v in vals))
            if self.published and x in self.published:
                pub = self.published[x]
                lines.append(f"{'published':<10}{'':>5}" + "".join(
                    f"{pub[n]:>11.2E}" if n in pub else f"{'':>11}" for n in self.orders))
        return "\n".join(lines) + "\n"


def error_table(
    problem: TelegraphProblem,
    exact: ExactSolution,
    orders: Sequence[int] = TABLE_ORDERS,
    xs: Sequence[float] = TABLE_XS,
    t_star: float = 1.0,
    backend: str = "symbolic",
    sol: Optional[SeriesSolution] = None,
    **solve_kw,
) -> ErrorTable:
    """Errors of the order-n truncations for every n in ``orders``.

    One solve at ``max(orders)``; lower orders reuse its leading coefficients.
    """
    orders = tuple(int(n) for n in orders)
    if list(orders) != sorted(orders):
        raise ValueError("orders must be ascending")
    if sol is None or sol.order < orders[-1]:
        sol = solve(problem.with_order(max(orders[-1], 2)), backend, **solve_kw)
    errs = np.empty((len(xs), len(orders)))
    for j, n in enumerate(orders):
        part = sol.truncate(n)
        for i, x in enumerate(xs):
            errs[i, j] = abs_error(part, exact, x, t_star)
    return ErrorTable(tuple(float(x) for x in xs), orders, float(t_star), errs, problem.name)


# ---------------------------------------------------------------------------
# Finite-difference reference
# ---------------------------------------------------------------------------


@dataclass
class FDResult:
    x: np.ndarray
    w: np.ndarray
    t_end: float
    steps: int
    boundary_source: str


def fd_reference(
    problem: TelegraphProblem,
    dx: float,
    dt: float,
    t_end: float,
    boundary: Optional[Callable] = None,
    boundary_source: str = "",
    blowup: float = 1e8,
) -> FDResult:
    """Explicit central-difference solution of the PDE up to ``t_end``.

    Second order in ``dx`` and ``dt``; requires ``dt <= dx``.  ``boundary``
    is a callable ``(x_array, t) -> values`` for the two edge nodes (an
    :class:`ExactSolution` or a :class:`SeriesSolution` both work).
    """
    if not (dx > 0 and dt > 0 and t_end > 0):
        raise ValueError("dx, dt and t_end must be positive")
    if dt > dx * (1 + 1e-12):
        raise ValueError(f"explicit scheme needs dt <= dx (got dt={dt}, dx={dx})")
    if boundary is None:
        raise ValueError("fd_reference needs boundary data (exact or series solution)")
    d = problem.domain
    nx = int(round(d.length / dx))
    if not math.isclose(nx * dx, d.length, rel_tol=1e-9):
        raise ValueError("dx must divide the spatial interval")
    nt = int(round(t_end / dt))
    if not math.isclose(nt * dt, t_end, rel_tol=1e-9):
        raise ValueError("dt must divide t_end")
    x = np.linspace(d.x_lo, d.x_hi, nx + 1)
    edges = x[[0, -1]]
    a, b2 = float(problem.alpha), float(problem.beta) ** 2
    g = problem.nonlinearity.apply

    def forcing(t):
        return np.broadcast_to(np.asarray(E.evaluate(problem.forcing, x, t, lib=E.NUMPY), dtype=float), x.shape)

    def lap(w):
        out = np.zeros_like(w)
        out[1:-1] = (w[2:] - 2 * w[1:-1] + w[:-2]) / (dx * dx)
        return out

    ev = lambda e: np.broadcast_to(np.asarray(E.evaluate(e, x, 0.0, lib=E.NUMPY), dtype=float), x.shape)  # noqa: E731
    w0 = ev(problem.h0).copy()
    v0 = ev(problem.h1)
    h0xx = ev(E.diff(E.diff(problem.h0, "x"), "x"))
    acc0 = -2 * a * v0 - b2 * w0 + h0xx + forcing(0.0) + g(w0)
    w1 = w0 + dt * v0 + 0.5 * dt * dt * acc0
    w1[[0, -1]] = boundary(edges, dt)
    scale = max(1.0, float(np.max(np.abs(w0))))
    prev, cur = w0, w1
    lhs = 1 / (dt * dt) + a / dt
    for step in range(1, nt):
        t = step * dt
        rhs = lap(cur) + forcing(t) + g(cur) - b2 * cur + (2 * cur - prev) / (dt * dt) + a * prev / dt
        nxt = rhs / lhs
        nxt[[0, -1]] = boundary(edges, t + dt)
        if not np.all(np.isfinite(nxt)) or np.max(np.abs(nxt)) > blowup * scale:
            raise NumericalInstability(f"finite-difference solution blew up at t={t + dt:.4g}")
        prev, cur = cur, nxt
    if nt == 1:
        cur = w1
    return FDResult(x, cur, nt * dt, nt, boundary_source)
