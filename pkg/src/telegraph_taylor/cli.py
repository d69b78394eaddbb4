"""Command-line front end.

Examples::

    telegraph-taylor --problem example1 --report deltas
    telegraph-taylor --problem example2 --report errors --t 1 --out run2
    telegraph-taylor --config run2/config.yaml --out run2b

Exit codes: 0 success, 2 bad input (arguments, config, expressions),
3 numerical failure, 4 file I/O failure.  Failures print one JSON object
on stderr.
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys
import warnings
from typing import Dict, List, Optional

import numpy as np

from . import expr as E
from .config import REPORTS, ConfigError, ProblemSpec, RunConfig, load_config
from .convergence import deltas
from .oracle import ExactSolutionMismatch, error_table
from .parser import ParseError
from .published import TABLES
from .solver import solve
from .spatial import NumericalInstability, QuadratureError

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC, EXIT_IO = 0, 2, 3, 4


def _g(v: float) -> str:
    return "%.17g" % v


def _csv(header: List[str], rows) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(_g(v) if isinstance(v, float) else str(v) for v in row) + "\n")
    return buf.getvalue()


def deltas_report(sol, fmt: str) -> str:
    rep = deltas(sol)
    if fmt == "csv":
        return _csv(["n", "from_term", "to_term", "delta"],
                    [(n, i, j, float(r)) for n, (i, j, r) in enumerate(rep.ratios)])
    lines = [f"term norms (order {sol.order}):"]
    lines += [f"  ||w_{i}|| = {v:.10e}" for i, v in enumerate(rep.term_norms)]
    if rep.skipped:
        lines.append(f"  zero terms skipped: {', '.join(map(str, rep.skipped))}")
    lines.append("ratios:")
    for n, (i, j, r) in enumerate(rep.ratios):
        lines.append(f"  delta_{n} = ||w_{j}||/||w_{i}|| = {r:.10f}")
    verdict = "all ratios < 1" if rep.verdict else "some ratio >= 1"
    lines.append(f"verdict: {verdict}" + (" (fewer than two nonzero terms)" if rep.vacuous else ""))
    return "\n".join(lines) + "\n"


def errors_report(problem, exact, sol, cfg: RunConfig) -> str:
    orders = tuple(n for n in cfg.orders if n <= sol.order)
    if not orders:
        raise ConfigError(f"no table orders <= solve order {sol.order}")
    table = error_table(problem, exact, orders, cfg.xs, cfg.t, sol=sol)
    if cfg.format == "csv":
        return table.to_csv()
    if cfg.problem.builtin and cfg.t == 1.0 and cfg.problem.builtin in TABLES:
        rows = TABLES[cfg.problem.builtin]["proposed"]
        table.published = {x: dict(zip((10, 11, 12, 13, 14, 15), v)) for x, v in rows.items()}
    return table.render()


def surface_report(problem, exact, sol, cfg: RunConfig) -> str:
    d = problem.domain
    nx = int(round(d.length / cfg.x_step))
    xs = np.linspace(d.x_lo, d.x_hi, nx + 1)
    if cfg.t_step is None:
        ts = np.array([cfg.t])
    else:
        ts = np.linspace(0.0, cfg.t, int(round(cfg.t / cfg.t_step)) + 1)
    X, Tm = np.meshgrid(xs, ts)
    X, Tm = X.ravel(), Tm.ravel()
    w = sol.eval(X, Tm)
    if exact is None:
        header = ["x", "t", "w_approx"]
        cols = [X, Tm, w]
    else:
        we = exact(X, Tm)
        header = ["x", "t", "w_approx", "w_exact", "abs_err"]
        cols = [X, Tm, w, we, np.abs(w - we)]
    if cfg.format == "csv":
        return _csv(header, zip(*(c.tolist() for c in cols)))
    lines = [" ".join(f"{h:>24}" for h in header)]
    lines += [" ".join(f"{v:>24.16e}" for v in row) for row in zip(*cols)]
    return "\n".join(lines) + "\n"


def run(cfg: RunConfig, out_dir: Optional[str] = None, stdout=None) -> Dict[str, str]:
    """Run ``cfg``; returns ``{artifact name: content}`` and writes files
    to ``out_dir`` when given (plus the resolved ``config.yaml``)."""
    stdout = stdout or sys.stdout
    problem, exact = cfg.build()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore" if problem.boundary is None else "default")
        sol = solve(problem, cfg.backend, grid_points=cfg.grid_points)
    ext = "csv" if cfg.format == "csv" else "txt"
    artifacts: Dict[str, str] = {}
    for rep in cfg.reports:
        if rep == "deltas":
            artifacts[f"deltas.{ext}"] = deltas_report(sol, cfg.format)
        elif rep in ("errors", "surface") and exact is None:
            raise ConfigError(f"the {rep} report needs an exact solution")
        elif rep == "errors":
            artifacts[f"errors.{ext}"] = errors_report(problem, exact, sol, cfg)
        else:
            artifacts[f"surface.{ext}"] = surface_report(problem, exact, sol, cfg)
    if out_dir is None:
        for name, text in artifacts.items():
            if len(artifacts) > 1:
                stdout.write(f"# {name}\n")
            stdout.write(text)
        return artifacts
    os.makedirs(out_dir, exist_ok=True)
    for name, text in list(artifacts.items()) + [("config.yaml", cfg.to_yaml())]:
        with open(os.path.join(out_dir, name), "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return artifacts


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="telegraph-taylor",
        description="Time-Taylor series solutions of the 1D telegraph equation.",
    )
    src = p.add_mutually_exclusive_group()
    src.add_argument("--problem", choices=["example1", "example2", "example3"],
                     help="built-in problem (default example1 when no --config)")
    src.add_argument("--config", metavar="PATH", help="YAML run configuration")
    p.add_argument("--order", type=int, help="truncation order N (default 15)")
    p.add_argument("--backend", choices=["symbolic", "grid"], help="coefficient representation")
    p.add_argument("--grid-points", type=int, help="Chebyshev nodes for the grid backend (default 64)")
    p.add_argument("--t", type=float, help="evaluation time for errors/surface (default 1)")
    p.add_argument("--report", "--table", dest="report", choices=list(REPORTS) + ["all"],
                   help="artifact to produce (default deltas)")
    p.add_argument("--x-step", type=float, help="surface sampling step in x (default 0.001)")
    p.add_argument("--t-step", type=float, help="sweep the surface over 0..t with this step")
    p.add_argument("--out", metavar="DIR", help="write artifacts and the resolved config here")
    p.add_argument("--format", choices=["csv", "text"], help="artifact format (default csv)")
    return p


def _fail(code: int, kind: str, message: str) -> int:
    sys.stderr.write(json.dumps({"error": kind, "message": message, "exit_code": code}) + "\n")
    return code


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.config:
            cfg = load_config(args.config)
        else:
            cfg = RunConfig(problem=ProblemSpec(builtin=args.problem or "example1"))
        reports = None
        if args.report:
            reports = REPORTS if args.report == "all" else (args.report,)
        cfg = cfg.with_overrides(
            order=args.order, backend=args.backend, grid_points=args.grid_points, t=args.t,
            reports=reports, x_step=args.x_step, t_step=args.t_step, format=args.format,
        )
        run(cfg, args.out)
    except OSError as e:
        return _fail(EXIT_IO, "io", f"{e.filename or ''}: {e.strerror or e}".lstrip(": "))
    except (ParseError, ConfigError) as e:
        return _fail(EXIT_INPUT, type(e).__name__, str(e))
    except (NumericalInstability, QuadratureError, E.ExpressionTooLarge, ExactSolutionMismatch,
            ArithmeticError) as e:
        return _fail(EXIT_NUMERIC, type(e).__name__, str(e))
    except ValueError as e:
        return _fail(EXIT_INPUT, type(e).__name__, str(e))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
