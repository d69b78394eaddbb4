"""Built-in test problems with known closed-form solutions.

========  =================  ==========  ===============================
name      alpha, beta        x interval  exact solution
========  =================  ==========  ===============================
example1  10, 5              (0, 1)      sinh(x) exp(-2t)
example2  10, 5              (0, 1)      sin(x) cos(t)
example3  1/2, 0, g=-2sin w  (0, 2)      (1 - cos(pi x)) exp(-t)
========  =================  ==========  ===============================

All three use T = 1.  Each exact solution is checked against its problem
the first time the problem is built.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .oracle import ExactSolution
from .published import published
from .solver import SinW, TelegraphProblem, Zero
from .spatial import Domain

NAMES = ("example1", "example2", "example3")


@dataclass(frozen=True)
class Builtin:
    problem: TelegraphProblem
    exact: ExactSolution

    @property
    def name(self) -> str:
        return self.problem.name

    def published(self, method: str = "proposed"):
        return published(self.name, method)


_DEFS = {
    "example1": dict(
        alpha=10, beta=5,
        forcing="(3 - 4*10 + 5^2) * exp(-2*t) * sinh(x)",
        h0="sinh(x)", h1="-2*sinh(x)",
        domain=(0, 1), nonlinearity=Zero(),
        exact="sinh(x) * exp(-2*t)",
    ),
    "example2": dict(
        alpha=10, beta=5,
        forcing="-2*10*sin(t)*sin(x) + 5^2*cos(t)*sin(x)",
        h0="sin(x)", h1="0",
        domain=(0, 1), nonlinearity=Zero(),
        exact="sin(x) * cos(t)",
    ),
    "example3": dict(
        alpha=Fraction(1, 2), beta=0,
        forcing="-pi^2*exp(-t)*cos(pi*x) + 2*sin(exp(-t)*(1 - cos(pi*x)))",
        h0="1 - cos(pi*x)", h1="-(1 - cos(pi*x))",
        domain=(0, 2), nonlinearity=SinW(-2),
        exact="(1 - cos(pi*x)) * exp(-t)",
    ),
}

_CHECKED: set = set()


def builtin(name: str, order: int = 15, T: float = 1.0, check: bool = True) -> Builtin:
    """Problem and exact solution for a built-in example."""
    try:
        d = _DEFS[name]
    except KeyError:
        raise KeyError(f"unknown built-in problem {name!r}; choose from {', '.join(NAMES)}") from None
    problem = TelegraphProblem(
        alpha=d["alpha"], beta=d["beta"], forcing=d["forcing"], h0=d["h0"], h1=d["h1"],
        domain=Domain(*d["domain"], T), order=order, nonlinearity=d["nonlinearity"], name=name,
    )
    exact = ExactSolution(d["exact"], note=f"closed form of {name}")
    key = (name, T)
    if check and key not in _CHECKED:
        exact.check(problem)
        _CHECKED.add(key)
    return Builtin(problem, exact)


def source(name: str) -> Optional[dict]:
    """Text form of a built-in problem, as used in config files."""
    d = _DEFS.get(name)
    if d is None:
        return None
    return {
        "alpha": str(d["alpha"]), "beta": str(d["beta"]),
        "forcing": d["forcing"], "nonlinearity": d["nonlinearity"].to_text(),
        "h0": d["h0"], "h1": d["h1"],
        "x_lo": d["domain"][0], "x_hi": d["domain"][1],
        "exact": d["exact"],
    }
