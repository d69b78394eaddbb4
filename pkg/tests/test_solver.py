import math
from dataclasses import replace
from fractions import Fraction

import numpy as np
import pytest

from telegraph_taylor import expr as E
from telegraph_taylor import solver as V
from telegraph_taylor.spatial import Domain

XS = np.linspace(0.0, 1.0, 21)


def zero_problem(order=8):
    return V.TelegraphProblem(3, 2, "0", "0", "0", Domain(0, 1), order)


# -- nonlinearity grammar ---------------------------------------------------

@pytest.mark.parametrize("text,cls", [
    ("0", V.Zero), ("-2*sin(w)", V.SinW), ("cos(w)", V.CosW), ("1/2*exp(w)", V.ExpW),
    ("3*w", V.Linear), ("w^3", V.Power), ("w^2 - sin(w)", V.Sum),
])
def test_parse_nonlinearity(text, cls):
    g = V.parse_nonlinearity(text)
    assert isinstance(g, cls)
    assert V.parse_nonlinearity(g.to_text()) == g


@pytest.mark.parametrize("bad", ["sin(x)", "w w", "2*", "w^0", "log(w)"])
def test_parse_nonlinearity_errors(bad):
    with pytest.raises(ValueError):
        V.parse_nonlinearity(bad)


@pytest.mark.parametrize("g", [
    V.Linear(Fraction(3, 2)), V.Power(3, -1), V.SinW(2), V.CosW(-1), V.ExpW(Fraction(1, 3)),
    V.Sum((V.Power(2, 1), V.SinW(-2))),
])
def test_online_coefficients_match_direct_expansion(g):
    # scalar w(t) = 0.3 + 0.5 t - 0.2 t^2 + 0.1 t^3, compare with finite Taylor expansion of g(w(t))
    w = [0.3, 0.5, -0.2, 0.1, 0.0, 0.0]
    on = g.online()
    got = [float(on.next(w[: k + 1])) for k in range(6)]
    wt = E.parse("3/10 + 1/2*t - 1/5*t^2 + 1/10*t^3")
    texts = {
        "Linear": lambda: E.Mul(E.Const(g.lam), wt),
        "Power": lambda: E.Mul(E.Const(g.scale), E.Pow(wt, g.m)),
        "SinW": lambda: E.Mul(E.Const(g.scale), E.Sin(wt)),
        "CosW": lambda: E.Mul(E.Const(g.scale), E.Cos(wt)),
        "ExpW": lambda: E.Mul(E.Const(g.scale), E.Exp(wt)),
        "Sum": lambda: E.Add(E.Pow(wt, 2), E.Mul(E.Const(-2), E.Sin(wt))),
    }
    want = [E.evaluate(c, 0.0) for c in E.t_taylor_coeffs(texts[type(g).__name__](), 5)]
    np.testing.assert_allclose(got, want, rtol=1e-13, atol=1e-15)


# -- problem validation ----------------------------------------------------

def test_problem_validation():
    with pytest.raises(ValueError):
        V.TelegraphProblem(1, 1, "0", "t", "0", Domain(0, 1), 5)
    with pytest.raises(ValueError):
        V.TelegraphProblem(1, 1, "0", "0", "0", Domain(0, 1), 1)


def test_boundary_data_warns():
    p = V.TelegraphProblem(1, 1, "0", "x", "0", Domain(0, 1), 4, boundary=("0", "1"))
    with pytest.warns(UserWarning, match="not enforced"):
        V.solve(p)


# -- built-in examples -----------------------------------------------------

def test_example1_coefficients(symbolic_solutions):
    a = symbolic_solutions["example1"].factorial_coeffs()
    for k in range(4):
        assert a[k].expr == E.simplify(E.parse(f"{(-2) ** k}*sinh(x)"))


def test_example2_coefficients(symbolic_solutions):
    a = symbolic_solutions["example2"].factorial_coeffs()
    want = ["sin(x)", "0", "-sin(x)", "0", "sin(x)"]
    assert [c.expr for c in a[:5]] == [E.simplify(E.parse(w)) for w in want]


def test_example3_coefficients(symbolic_solutions):
    a = symbolic_solutions["example3"].factorial_coeffs()
    for k in range(9):
        assert a[k].expr == E.simplify(E.parse(f"{(-1) ** k}*(1 - cos(pi*x))"))


def test_initial_data_exact(symbolic_solutions, builtins):
    for name, sol in symbolic_solutions.items():
        p = builtins[name].problem
        assert sol.coeffs[0].expr == E.simplify(p.h0)
        assert sol.coeffs[1].expr == E.simplify(p.h1)


def test_zero_problem():
    for backend in ("symbolic", "grid"):
        sol = V.solve(zero_problem(), backend)
        assert all(c.is_zero() for c in sol.coeffs)
        assert np.all(sol.residual(XS, 0.4) == 0)


# -- evaluation ------------------------------------------------------------

def test_eval_example1(symbolic_solutions):
    sol = symbolic_solutions["example1"]
    want = math.sinh(0.5) * sum((-2) ** k / math.factorial(k) for k in range(16))
    assert sol.eval(0.5, 1.0) == pytest.approx(want, rel=1e-14)
    np.testing.assert_allclose(sol.eval(XS, 0.0), np.sinh(XS), rtol=1e-15)


def test_eval_example3_datum(symbolic_solutions):
    assert symbolic_solutions["example3"].eval(1.0, 0.0) == pytest.approx(2.0, abs=1e-15)
    assert V.eval_solution(symbolic_solutions["example3"], 1.0, 0.0) == pytest.approx(2.0, abs=1e-15)


def test_eval_grid_out_of_domain(builtins):
    sol = V.solve(builtins["example1"].problem.with_order(4), "grid")
    with pytest.raises(ValueError):
        sol.eval(1.5, 0.2)


def test_residual(symbolic_solutions, builtins):
    assert abs(V.residual(symbolic_solutions["example1"], 0.5, 0.1)) < 1e-12
    sol3 = V.solve(builtins["example3"].problem.with_order(10))
    assert abs(sol3.residual(0.7, 0.0)) < 1e-10
    # the defect grows like t^(N-1)
    r = [abs(symbolic_solutions["example1"].residual(0.5, t)) for t in (0.5, 1.0)]
    assert r[0] < r[1]


# -- structural properties -------------------------------------------------

class _Recorder(V.NonlinSpec):
    """Wraps a nonlinearity and records how many coefficients each call sees."""

    def __init__(self, inner):
        self.inner = inner
        self.seen = []

    def online(self):
        inner = self.inner.online()
        rec = self

        class On:
            def next(self, w):
                rec.seen.append(len(w))
                return inner.next(w)

        return On()

    def apply(self, w):
        return self.inner.apply(w)

    def to_text(self):
        return self.inner.to_text()


def test_nonlinear_term_reads_only_known_coefficients(builtins):
    rec = _Recorder(V.SinW(-2))
    V.solve(replace(builtins["example3"].problem, nonlinearity=rec, order=10))
    assert rec.seen == [k + 1 for k in range(9)]


def test_factorial_correspondence(symbolic_solutions):
    profiles = {
        "example1": lambda k: (-2) ** k * np.sinh(XS),
        "example2": lambda k: (0 if k % 2 else (-1) ** (k // 2)) * np.sin(XS),
        "example3": lambda k: (-1) ** k * (1 - np.cos(np.pi * 2 * XS)),
    }
    for name, sol in symbolic_solutions.items():
        xs = 2 * XS if name == "example3" else XS
        for k, a in enumerate(sol.factorial_coeffs()[:7]):
            np.testing.assert_allclose(a.values_at(xs), profiles[name](k), atol=1e-12)


def test_linearity_superposition():
    d = Domain(0, 1)
    p1 = V.TelegraphProblem(2, 3, "x*exp(-t)", "sin(x)", "x^2", d, 10)
    p2 = V.TelegraphProblem(2, 3, "cos(t)*cosh(x)", "1 - x", "exp(x)", d, 10)
    p12 = V.TelegraphProblem(2, 3, "x*exp(-t) + cos(t)*cosh(x)", "sin(x) + 1 - x", "x^2 + exp(x)", d, 10)
    s1, s2, s12 = (V.solve(p) for p in (p1, p2, p12))
    pts = np.linspace(0, 1, 11)
    for t in (0.3, 1.0):
        np.testing.assert_allclose(s1.eval(pts, t) + s2.eval(pts, t), s12.eval(pts, t), rtol=1e-13, atol=1e-13)


def test_grid_backend_matches_symbolic(symbolic_solutions, builtins):
    for name, sym in symbolic_solutions.items():
        grid = V.solve(builtins[name].problem, "grid")
        nodes = grid.grid.nodes_float
        for k in range(13):
            assert np.max(np.abs(grid.coeffs[k].to_float() - sym.coeffs[k].values_at(nodes))) <= 1e-8


def test_polynomial_nonlinearity_solution_matches_direct_series():
    # w_tt = w^2 with w(0)=1, w_t(0)=0 (no x dependence): compare with scalar recursion
    p = V.TelegraphProblem(0, 0, "0", "1", "0", Domain(0, 1), 8, nonlinearity="w^2")
    sol = V.solve(p)
    c = [Fraction(1), Fraction(0)]
    for k in range(7):
        sq = sum(c[j] * c[k - j] for j in range(k + 1))
        c.append(sq / ((k + 1) * (k + 2)))
    assert [E.as_constant(f.expr) for f in sol.coeffs] == c


def test_truncate(symbolic_solutions):
    sol = symbolic_solutions["example1"]
    assert sol.truncate(4).order == 4
    with pytest.raises(ValueError):
        sol.truncate(99)


def test_unknown_backend(builtins):
    with pytest.raises(ValueError):
        V.solve(builtins["example1"].problem, "fem")


def test_precise_eval_only_symbolic(builtins):
    sol = V.solve(builtins["example1"].problem.with_order(3), "grid")
    with pytest.raises(TypeError):
        sol.precise_eval(0.5, 0.5)
