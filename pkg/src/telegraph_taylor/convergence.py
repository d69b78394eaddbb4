"""Ratio test on the terms ``w_i(x, t) = c_i(x) t^i`` of a series solution.

Term sizes are L2 norms over the space-time box ``(x_lo, x_hi) x (0, T)``.
Because each term factorizes, the t-integral is exact:

    ||w_i|| = ||c_i||_{L2(x)} * sqrt(T^(2i+1) / (2i+1)).

The reported ratios run over consecutive *nonzero* terms, so a series whose
odd terms vanish is compared even-to-even.  The strict per-index ratios
(``||w_{n+1}|| / ||w_n||``, taken as 0 when ``||w_n|| = 0``) are kept alongside.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from .spatial import Domain


def term_norm(sol, i: int, domain: Optional[Domain] = None) -> float:
    """Space-time L2 norm of ``c_i(x) t^i``."""
    if not 0 <= i <= sol.order:
        raise IndexError(f"term {i} outside 0..{sol.order}")
    domain = domain or sol.domain
    return sol.coeffs[i].l2_norm(domain) * math.sqrt(domain.T ** (2 * i + 1) / (2 * i + 1))


@dataclass(frozen=True)
class ConvergenceReport:
    term_norms: Tuple[float, ...]
    ratios: Tuple[Tuple[int, int, float], ...]
    strict: Tuple[float, ...]
    skipped: Tuple[int, ...]
    zero_threshold: float
    verdict: bool
    vacuous: bool
    w0_norm: float
    delta_max: Optional[float]
    rate: Optional[float]

    @property
    def deltas(self) -> List[float]:
        """Ratio values in order; entry n is the n-th ratio (starting at 0)."""
        return [r for _, _, r in self.ratios]

    def leading(self, count: int = 3, start: int = 1) -> List[float]:
        """``count`` ratios starting at index ``start``."""
        return self.deltas[start : start + count]

    def bound(self, m: int, n: int) -> Optional[float]:
        """Geometric bound on ``||S_n - S_m||`` using the per-step rate."""
        if self.rate is None:
            return None
        return tail_bound(self.rate, m, n, self.w0_norm)


def deltas(sol, domain: Optional[Domain] = None, zero_threshold: Optional[float] = None,
           rel_threshold: float = 1e-13) -> ConvergenceReport:
    """Build the ratio report for ``sol``.

    Terms with norm at or below ``zero_threshold`` (default
    ``rel_threshold * max norm``) are treated as zero and skipped.
    ``delta_max`` is the largest reported ratio.  ``rate`` is the smallest
    ``r`` with ``||w_j|| <= r^(j-i) ||w_i||`` for every consecutive nonzero
    pair, which is the per-step contraction that the geometric bound needs
    when zero terms are skipped.
    """
    domain = domain or sol.domain
    norms = tuple(term_norm(sol, i, domain) for i in range(sol.order + 1))
    thr = zero_threshold if zero_threshold is not None else rel_threshold * max(norms, default=0.0)
    live = [i for i, v in enumerate(norms) if v > thr]
    skipped = tuple(i for i, v in enumerate(norms) if v <= thr)
    ratios = tuple((i, j, norms[j] / norms[i]) for i, j in zip(live, live[1:]))
    strict = tuple(
        0.0 if norms[i] <= thr else (norms[i + 1] if norms[i + 1] > thr else 0.0) / norms[i]
        for i in range(sol.order)
    )
    vacuous = len(ratios) == 0
    verdict = all(r < 1 for _, _, r in ratios)
    delta_max = max((r for _, _, r in ratios), default=None)
    if live and live[0] > 0:
        rate = None  # w_0 vanishes while later terms do not: no bound in terms of ||w_0||
    else:
        rate = max((r ** (1.0 / (j - i)) for i, j, r in ratios), default=0.0)
    return ConvergenceReport(
        term_norms=norms,
        ratios=ratios,
        strict=strict,
        skipped=skipped,
        zero_threshold=thr,
        verdict=verdict,
        vacuous=vacuous,
        w0_norm=norms[0],
        delta_max=delta_max,
        rate=rate,
    )


def tail_bound(delta_max: float, m: int, n: int, w0_norm: float) -> Optional[float]:
    """``delta^(m+1) (1 - delta^(n-m)) / (1 - delta) * ||w_0||``.

    Returns ``None`` when ``delta_max >= 1``: the geometric argument needs a
    contraction.
    """
    if n < m:
        raise ValueError(f"need n >= m, got m={m}, n={n}")
    if delta_max < 0:
        raise ValueError("delta must be non-negative")
    if delta_max >= 1:
        return None
    if delta_max == 0:
        return 0.0
    d = delta_max
    return d ** (m + 1) * (1 - d ** (n - m)) / (1 - d) * w0_norm


def partial_sum_gap(sol, m: int, n: int, domain: Optional[Domain] = None,
                    nx: int = 64, nt: int = 24) -> float:
    """``||S_n - S_m||`` over the space-time box by tensor Gauss-Legendre."""
    if not 0 <= m <= n <= sol.order:
        raise ValueError(f"need 0 <= m <= n <= {sol.order}")
    domain = domain or sol.domain
    gx, wx = np.polynomial.legendre.leggauss(nx)
    gt, wt = np.polynomial.legendre.leggauss(nt)
    half = domain.length / 2
    xs = domain.x_lo + half * (gx + 1)
    wx = wx * half
    ts = domain.T * (gt + 1) / 2
    wt = wt * domain.T / 2
    acc = np.zeros((nx, nt))
    for k in range(m + 1, n + 1):
        acc += np.outer(sol.coeffs[k].values_at(xs), ts**k)
    return math.sqrt(float(wx @ (acc**2) @ wt))
