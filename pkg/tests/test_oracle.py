import math

import mpmath
import numpy as np
import pytest

from telegraph_taylor import catalog
from telegraph_taylor import oracle as O
from telegraph_taylor import solver as V
from telegraph_taylor.spatial import Domain, NumericalInstability


def remainder1(x, n, t=1):
    with mpmath.workdps(50):
        t = mpmath.mpf(t)
        part = sum((-2 * t) ** k / mpmath.factorial(k) for k in range(n + 1))
        return float(mpmath.sinh(x) * abs(mpmath.exp(-2 * t) - part))


def test_exact_solutions_satisfy_problems(builtins):
    for b in builtins.values():
        assert b.exact.check(b.problem) < 1e-10


def test_wrong_exact_solution_rejected(builtins):
    bad = O.ExactSolution("sinh(x)*exp(-t)")
    with pytest.raises(O.ExactSolutionMismatch):
        bad.check(builtins["example1"].problem)


def test_abs_error_example1(symbolic_solutions, builtins):
    sol = symbolic_solutions["example1"].truncate(10)
    err = O.abs_error(sol, builtins["example1"].exact, 0.1, 1.0)
    assert err == pytest.approx(remainder1(0.1, 10), rel=1e-12)
    assert err == pytest.approx(4.398e-6, rel=1e-3)


def test_abs_error_zero_at_t0(symbolic_solutions, builtins):
    for name, sol in symbolic_solutions.items():
        assert O.abs_error(sol, builtins[name].exact, 0.3, 0.0) < 1e-40


def test_example2_even_odd_pairs(symbolic_solutions, builtins):
    sol = symbolic_solutions["example2"]
    e10 = O.abs_error(sol.truncate(10), builtins["example2"].exact, 0.1, 1.0)
    e11 = O.abs_error(sol.truncate(11), builtins["example2"].exact, 0.1, 1.0)
    assert e10 == pytest.approx(e11, rel=1e-30)


def test_error_table_shape_and_profile(builtins, symbolic_solutions):
    b = builtins["example1"]
    tab = O.error_table(b.problem, b.exact, sol=symbolic_solutions["example1"])
    assert tab.errors.shape == (5, 6)
    ratio = math.sinh(0.5) / math.sinh(0.1)
    for n in tab.orders:
        assert tab.cell(0.5, n) / tab.cell(0.1, n) == pytest.approx(ratio, rel=1e-12)


def test_error_table_monotone(builtins, symbolic_solutions):
    for name, b in builtins.items():
        tab = O.error_table(b.problem, b.exact, sol=symbolic_solutions[name])
        assert np.all(np.diff(tab.errors, axis=1) <= 0)


def test_error_table_zero_problem():
    p = V.TelegraphProblem(1, 1, "0", "0", "0", Domain(0, 1), 15)
    tab = O.error_table(p, O.ExactSolution("0"))
    assert np.all(tab.errors == 0)


def test_error_table_requires_ascending(builtins):
    b = builtins["example1"]
    with pytest.raises(ValueError):
        O.error_table(b.problem, b.exact, orders=(12, 10))


def test_error_table_csv_and_text(builtins, symbolic_solutions):
    b = builtins["example3"]
    tab = O.error_table(b.problem, b.exact, sol=symbolic_solutions["example3"])
    csv = tab.to_csv()
    assert csv.splitlines()[0] == "x,n=10,n=11,n=12,n=13,n=14,n=15"
    assert len(csv.splitlines()) == 6
    tab.published = b.published()
    text = tab.render()
    assert "published" in text and "computed" in text


def test_grid_abs_error(builtins):
    b = builtins["example1"]
    sol = V.solve(b.problem.with_order(10), "grid")
    assert O.abs_error(sol, b.exact, 0.1, 1.0) == pytest.approx(remainder1(0.1, 10), rel=1e-8)


# -- finite differences ----------------------------------------------------

def test_fd_example1_accuracy(builtins):
    b = builtins["example1"]
    r = O.fd_reference(b.problem, 1 / 200, 1 / 200, 0.5, boundary=b.exact)
    assert np.max(np.abs(r.w - b.exact(r.x, 0.5))) <= 5e-4


@pytest.mark.parametrize("name", ["example1", "example2"])
def test_fd_second_order(builtins, name):
    b = builtins[name]
    errs = []
    for h in (1 / 100, 1 / 200):
        r = O.fd_reference(b.problem, h, h, 0.5, boundary=b.exact)
        errs.append(np.max(np.abs(r.w - b.exact(r.x, 0.5))))
    assert 3.6 <= errs[0] / errs[1] <= 4.4


def test_fd_zero_problem():
    p = V.TelegraphProblem(2, 1, "0", "0", "0", Domain(0, 1), 4)
    r = O.fd_reference(p, 0.05, 0.05, 1.0, boundary=lambda x, t: 0 * x)
    assert np.all(r.w == 0)


def test_fd_series_boundary(builtins, symbolic_solutions):
    b = builtins["example3"]
    sol = symbolic_solutions["example3"]
    r = O.fd_reference(b.problem, 1 / 200, 1 / 200, 0.5, boundary=sol.eval, boundary_source="series")
    assert np.max(np.abs(r.w[1:-1] - sol.eval(r.x[1:-1], 0.5))) < 1e-3


def test_fd_checks(builtins):
    b = builtins["example1"]
    with pytest.raises(ValueError):
        O.fd_reference(b.problem, 0.01, 0.02, 0.5, boundary=b.exact)
    with pytest.raises(ValueError):
        O.fd_reference(b.problem, 0.01, 0.01, 0.5)


def test_fd_blowup_detected():
    p = V.TelegraphProblem(0, 0, "0", "x", "1", Domain(0, 1), 4, nonlinearity="exp(w)")
    with pytest.raises(NumericalInstability):
        O.fd_reference(p, 0.01, 0.01, 5.0, boundary=lambda x, t: 0 * x + 1 + 10 * t, blowup=1e3)


def test_catalog_unknown():
    with pytest.raises(KeyError):
        catalog.builtin("example9")
