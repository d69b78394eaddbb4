"""Run configuration files (YAML, ``schema_version: 1``).

::

    schema_version: 1
    problem:
      builtin: example1          # example1 | example2 | example3, or the inline keys:
      # alpha: "10"              # numbers may be written as strings such as "1/2"
      # beta: "5"
      # forcing: "(3 - 4*10 + 5^2) * exp(-2*t) * sinh(x)"
      # nonlinearity: "0"        # e.g. "-2*sin(w)", "w^3 - 1/2*w"
      # h0: "sinh(x)"
      # h1: "-2*sinh(x)"
      # x_lo: 0
      # x_hi: 1
      # T: 1
      # exact: "sinh(x)*exp(-2*t)"   # optional; enables error reports
      # boundary: {g0: "...", g1: "..."}   # optional; stored, not enforced
    solver:
      order: 15
      backend: symbolic          # symbolic | grid
      grid_points: 64
    output:
      reports: [deltas]          # any of deltas, errors, surface
      format: csv                # csv | text
      t: 1                       # evaluation time for errors and surface
      x_step: 0.001              # surface sampling step in x
      t_step: null               # null: surface at t only; else sweep 0..t
      orders: [10, 11, 12, 13, 14, 15]
      xs: [0.1, 0.3, 0.5, 0.7, 0.9]

Expressions use the grammar of :mod:`telegraph_taylor.parser`.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Any, Dict, Optional, Tuple

import yaml

from . import catalog
from . import expr as E
from .oracle import TABLE_ORDERS, TABLE_XS, ExactSolution
from .solver import TelegraphProblem, parse_nonlinearity
from .spatial import Domain

SCHEMA_VERSION = 1
REPORTS = ("deltas", "errors", "surface")
BACKENDS = ("symbolic", "grid")
FORMATS = ("csv", "text")


class ConfigError(ValueError):
    """Invalid or unreadable configuration content."""


def _number(v, what: str):
    if isinstance(v, bool):
        raise ConfigError(f"{what}: expected a number, got {v!r}")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, float):
        return v
    if isinstance(v, str):
        try:
            return Fraction(v.strip())
        except (ValueError, ZeroDivisionError):
            try:
                return float(v)
            except ValueError:
                pass
    raise ConfigError(f"{what}: expected a number, got {v!r}")


def _num_text(v) -> str:
    if isinstance(v, Fraction):
        return str(v)
    return repr(float(v))


def _float(v, what: str) -> float:
    return float(_number(v, what))


@dataclass(frozen=True)
class ProblemSpec:
    """Problem description as text, before parsing."""

    builtin: Optional[str] = None
    alpha: Any = None
    beta: Any = None
    forcing: str = "0"
    nonlinearity: str = "0"
    h0: str = "0"
    h1: str = "0"
    x_lo: Any = 0
    x_hi: Any = 1
    T: Any = 1
    exact: Optional[str] = None
    boundary: Optional[Tuple[str, str]] = None

    def to_dict(self) -> Dict[str, Any]:
        if self.builtin:
            out: Dict[str, Any] = {"builtin": self.builtin}
            if _number(self.T, "T") != 1:
                out["T"] = _num_text(_number(self.T, "T"))
            return out
        out = {
            "alpha": _num_text(_number(self.alpha, "alpha")),
            "beta": _num_text(_number(self.beta, "beta")),
            "forcing": self.forcing,
            "nonlinearity": self.nonlinearity,
            "h0": self.h0,
            "h1": self.h1,
            "x_lo": _num_text(_number(self.x_lo, "x_lo")),
            "x_hi": _num_text(_number(self.x_hi, "x_hi")),
            "T": _num_text(_number(self.T, "T")),
        }
        if self.exact is not None:
            out["exact"] = self.exact
        if self.boundary is not None:
            out["boundary"] = {"g0": self.boundary[0], "g1": self.boundary[1]}
        return out


@dataclass(frozen=True)
class RunConfig:
    problem: ProblemSpec
    order: int = 15
    backend: str = "symbolic"
    grid_points: int = 64
    reports: Tuple[str, ...] = ("deltas",)
    format: str = "csv"
    t: float = 1.0
    x_step: float = 0.001
    t_step: Optional[float] = None
    orders: Tuple[int, ...] = TABLE_ORDERS
    xs: Tuple[float, ...] = TABLE_XS

    def __post_init__(self):
        if self.order < 2:
            raise ConfigError(f"order must be >= 2, got {self.order}")
        if self.backend not in BACKENDS:
            raise ConfigError(f"backend must be one of {BACKENDS}, got {self.backend!r}")
        if self.backend == "grid" and self.grid_points < 8:
            raise ConfigError(f"grid_points must be >= 8, got {self.grid_points}")
        bad = [r for r in self.reports if r not in REPORTS]
        if bad or not self.reports:
            raise ConfigError(f"reports must be a non-empty subset of {REPORTS}, got {list(self.reports)}")
        if self.format not in FORMATS:
            raise ConfigError(f"format must be one of {FORMATS}, got {self.format!r}")
        if not self.x_step > 0 or (self.t_step is not None and not self.t_step > 0):
            raise ConfigError("sampling steps must be positive")
        if not self.t >= 0:
            raise ConfigError("t must be non-negative")
        if list(self.orders) != sorted(self.orders) or any(n < 0 for n in self.orders):
            raise ConfigError("orders must be ascending non-negative integers")

    def with_overrides(self, **kw) -> "RunConfig":
        kw = {k: v for k, v in kw.items() if v is not None}
        return replace(self, **kw)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "schema_version": SCHEMA_VERSION,
            "problem": self.problem.to_dict(),
            "solver": {"order": self.order, "backend": self.backend, "grid_points": self.grid_points},
            "output": {
                "reports": list(self.reports),
                "format": self.format,
                "t": self.t,
                "x_step": self.x_step,
                "t_step": self.t_step,
                "orders": list(self.orders),
                "xs": list(self.xs),
            },
        }

    def to_yaml(self) -> str:
        return yaml.safe_dump(self.to_dict(), sort_keys=False, default_flow_style=None)

    def build(self) -> Tuple[TelegraphProblem, Optional[ExactSolution]]:
        """Parse expressions and construct the problem (and exact solution)."""
        return build_problem(self.problem, self.order)


def build_problem(spec: ProblemSpec, order: int) -> Tuple[TelegraphProblem, Optional[ExactSolution]]:
    T = _float(spec.T, "T")
    if spec.builtin:
        b = catalog.builtin(spec.builtin, order=order, T=T)
        return b.problem, b.exact
    if spec.alpha is None or spec.beta is None:
        raise ConfigError("inline problems need alpha and beta")
    boundary = None
    if spec.boundary is not None:
        boundary = tuple(E.parse(b) for b in spec.boundary)
    try:
        domain = Domain(_float(spec.x_lo, "x_lo"), _float(spec.x_hi, "x_hi"), T)
    except ValueError as e:
        raise ConfigError(str(e)) from None
    problem = TelegraphProblem(
        alpha=_number(spec.alpha, "alpha"),
        beta=_number(spec.beta, "beta"),
        forcing=E.parse(spec.forcing),
        h0=E.parse(spec.h0),
        h1=E.parse(spec.h1),
        domain=domain,
        order=order,
        nonlinearity=parse_nonlinearity(spec.nonlinearity),
        boundary=boundary,
        name="inline",
    )
    exact = None
    if spec.exact is not None:
        exact = ExactSolution(E.parse(spec.exact), note="user supplied")
        exact.check(problem)
    return problem, exact


_PROBLEM_KEYS = {"builtin", "alpha", "beta", "forcing", "nonlinearity", "h0", "h1",
                 "x_lo", "x_hi", "T", "exact", "boundary"}


def _expr_text(v, what: str) -> str:
    if isinstance(v, bool) or not isinstance(v, (str, int, float)):
        raise ConfigError(f"{what}: expected an expression string, got {v!r}")
    return str(v)


def parse_problem(d: Dict[str, Any]) -> ProblemSpec:
    if not isinstance(d, dict):
        raise ConfigError("problem section must be a mapping")
    unknown = set(d) - _PROBLEM_KEYS
    if unknown:
        raise ConfigError(f"unknown problem keys: {sorted(unknown)}")
    if "builtin" in d:
        name = d["builtin"]
        if name not in catalog.NAMES:
            raise ConfigError(f"unknown built-in problem {name!r}; choose from {list(catalog.NAMES)}")
        extra = set(d) - {"builtin", "T"}
        if extra:
            raise ConfigError(f"built-in problems only accept T, got {sorted(extra)}")
        return ProblemSpec(builtin=name, T=d.get("T", 1))
    boundary = d.get("boundary")
    if boundary is not None:
        if not isinstance(boundary, dict) or set(boundary) != {"g0", "g1"}:
            raise ConfigError("boundary must be a mapping with keys g0 and g1")
        boundary = (_expr_text(boundary["g0"], "g0"), _expr_text(boundary["g1"], "g1"))
    return ProblemSpec(
        alpha=d.get("alpha"),
        beta=d.get("beta"),
        forcing=_expr_text(d.get("forcing", "0"), "forcing"),
        nonlinearity=_expr_text(d.get("nonlinearity", "0"), "nonlinearity"),
        h0=_expr_text(d.get("h0", "0"), "h0"),
        h1=_expr_text(d.get("h1", "0"), "h1"),
        x_lo=d.get("x_lo", 0),
        x_hi=d.get("x_hi", 1),
        T=d.get("T", 1),
        exact=None if d.get("exact") is None else _expr_text(d["exact"], "exact"),
        boundary=boundary,
    )


def _section(d, name) -> Dict[str, Any]:
    s = d.get(name) or {}
    if not isinstance(s, dict):
        raise ConfigError(f"{name} section must be a mapping")
    return s


def config_from_dict(d: Dict[str, Any]) -> RunConfig:
    if not isinstance(d, dict):
        raise ConfigError("config must be a mapping")
    version = d.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ConfigError(f"unsupported schema_version {version!r}; expected {SCHEMA_VERSION}")
    unknown = set(d) - {"schema_version", "problem", "solver", "output"}
    if unknown:
        raise ConfigError(f"unknown top-level keys: {sorted(unknown)}")
    if "problem" not in d:
        raise ConfigError("config needs a problem section")
    solver = _section(d, "solver")
    output = _section(d, "output")
    kw: Dict[str, Any] = {}
    try:
        for k in ("order", "grid_points"):
            if k in solver:
                kw[k] = int(solver[k])
        if "backend" in solver:
            kw["backend"] = str(solver["backend"])
        if "reports" in output:
            reps = output["reports"]
            kw["reports"] = tuple([reps] if isinstance(reps, str) else reps)
        if "format" in output:
            kw["format"] = str(output["format"])
        for k in ("t", "x_step"):
            if k in output:
                kw[k] = _float(output[k], k)
        if output.get("t_step") is not None:
            kw["t_step"] = _float(output["t_step"], "t_step")
        if "orders" in output:
            kw["orders"] = tuple(int(n) for n in output["orders"])
        if "xs" in output:
            kw["xs"] = tuple(_float(x, "xs") for x in output["xs"])
    except (TypeError, ValueError) as e:
        raise ConfigError(f"bad solver/output value: {e}") from None
    return RunConfig(problem=parse_problem(d["problem"]), **kw)


def load_config(path: str) -> RunConfig:
    """Read and validate a YAML config.  I/O errors propagate as ``OSError``."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise ConfigError(f"invalid YAML in {path}: {e}") from None
    return config_from_dict(data)


def default_config(builtin: str = "example1") -> RunConfig:
    return RunConfig(problem=ProblemSpec(builtin=builtin))
