"""Desk-scale verification drivers: minimum fractional-part search over
primes, divisibility witness search, the three smoothed sums, star
discrepancy and decay-slope fitting.

Runs are deterministic for a fixed configuration: primes are enumerated in
ascending order, rows are written grid-point by grid-point, and every
recorded witness can be re-verified from scratch.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field, asdict
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .bounds import rho, rho_d, smoothing_params, DEFAULT_EPSILON
from .constants import Constant
from .exp_sums import TWO_PI, prime_exp_sum
from .primes import iter_prime_arrays
from .pseudo_poly import (
    PseudoPolynomial,
    dist_to_int,
    floor_certified,
    scaled_phase,
)

__all__ = [
    "MinSearchRow",
    "ExperimentRun",
    "min_search",
    "theorem_check",
    "DivisibilityWitness",
    "divisibility_search",
    "ThreeSumsReport",
    "three_sums_report",
    "discrepancy",
    "decay_fit",
    "DecayFit",
    "write_min_search_csv",
    "run_to_json",
]


@dataclass(frozen=True)
class MinSearchRow:
    X: int
    p_star: int
    m_value: float
    bound: float  # X^(-rho_d)
    ratio: float  # m_value / bound


@dataclass(frozen=True)
class DecayFit:
    slope: float
    intercept: float
    residual: float
    excluded: int = 0  # nonpositive values dropped from the fit


@dataclass
class ExperimentRun:
    kind: str  # min_search | divisibility | three_sums | discrepancy
    f: str
    xi: str
    grid: List[int]
    rows: list
    fit: Optional[DecayFit] = None
    config: dict = field(default_factory=dict)


def min_search(
    f: PseudoPolynomial,
    xi,
    X_grid: Sequence[int],
    config: Optional[dict] = None,
) -> ExperimentRun:
    """min over primes p <= X of ||xi*floor(f(p))||, per grid point.

    Single ascending pass; the minimum is cumulative so rows are
    non-increasing in m_value by construction.
    """
    grid = sorted(int(x) for x in X_grid)
    if not grid or grid[-1] > 10**8:
        raise ValueError("grid must be nonempty with max <= 10^8")
    rd = float(rho_d(f.theta_exact.as_fraction() if f.theta_exact.is_rational else f.theta))
    best = math.inf
    best_p = 0
    rows: List[MinSearchRow] = []
    gi = 0

    def record_until(limit: int):
        nonlocal gi
        while gi < len(grid) and limit > grid[gi]:
            _push_row(grid[gi])
            gi += 1

    def _push_row(X: int):
        bound = float(X) ** (-rd)
        rows.append(MinSearchRow(X, best_p, best, bound, best / bound))

    for arr in iter_prime_arrays(1, grid[-1]):
        for p in arr:
            p = int(p)
            record_until(p)
            d = dist_to_int(xi, floor_certified(f, p))
            if d < best:
                best, best_p = d, p
    while gi < len(grid):
        _push_row(grid[gi])
        gi += 1
    pairs = [(r.X, r.m_value) for r in rows if r.m_value > 0]
    fit = decay_fit(pairs) if len(pairs) >= 3 else None
    return ExperimentRun(
        kind="min_search",
        f=str(f),
        xi=str(xi),
        grid=grid,
        rows=rows,
        fit=fit,
        config=dict(config or {}),
    )


def theorem_check(run: ExperimentRun, rho_d_val) -> List[Tuple[int, bool, float]]:
    """Per grid point: does m(X) <= X^(-rho_d) (implied constant 1)?

    Returns (X, holds, ratio) triples; the ratio is reported because the
    asymptotic constant is not recoverable from a finite run.
    """
    if run.kind != "min_search":
        raise ValueError("theorem_check needs a min_search run")
    rd = float(rho_d_val)
    out = []
    for row in run.rows:
        bound = float(row.X) ** (-rd)
        out.append((row.X, row.m_value <= bound, row.m_value / bound))
    return out


@dataclass(frozen=True)
class DivisibilityWitness:
    m: int
    found: bool
    p: Optional[int] = None
    floor_value: Optional[int] = None


def divisibility_search(f: PseudoPolynomial, m: int, p_cap: int) -> DivisibilityWitness:
    """Smallest prime p <= p_cap with m | floor(f(p)); not-found is a report."""
    if m < 2:
        raise ValueError("need m >= 2")
    for arr in iter_prime_arrays(1, p_cap):
        for p in arr:
            p = int(p)
            N = floor_certified(f, p)
            if N % m == 0:
                return DivisibilityWitness(m=m, found=True, p=p, floor_value=N)
    return DivisibilityWitness(m=m, found=False)


@dataclass(frozen=True)
class ThreeSumsReport:
    X: int
    m: int
    q: int
    H: int
    sum1: float  # (1/q) |sum_p e(m xi f(p))|
    sum2: float  # sum_{0<|h|<=H} (1/|h|) |sum_p e((m xi + h) f(p))|
    sum3: float  # Fejer-weighted sum over |h| <= H
    context_bound: float  # q * X^(1-rho), for scale


def three_sums_report(
    f: PseudoPolynomial,
    xi,
    m: int,
    X: int,
    epsilon: float = DEFAULT_EPSILON,
) -> ThreeSumsReport:
    """Numeric values of the three smoothed sums with q, H as derived."""
    if m < 1 or X < 100:
        raise ValueError("need m >= 1 and X >= 100")
    xi = xi if isinstance(xi, Constant) else Constant(Fraction(xi))
    theta = f.theta_exact.as_fraction() if f.theta_exact.is_rational else f.theta
    r = rho(theta)
    sp = smoothing_params(m, X, r, epsilon)
    q, H = sp.q, sp.H
    y0 = xi * m
    s1 = abs(prime_exp_sum(f, y0, X).value) / q
    s2 = 0.0
    for h in range(-H, H + 1):
        if h == 0:
            continue
        s2 += abs(prime_exp_sum(f, y0 + h, X).value) / abs(h)
    s3 = 0.0
    for h in range(-H, H + 1):
        w = (1.0 - abs(h) / (H + 1.0)) / (H + 1.0)
        s3 += w * abs(prime_exp_sum(f, Constant(h), X).value)
    context = q * float(X) ** (1.0 - float(r))
    return ThreeSumsReport(
        X=X, m=m, q=q, H=H, sum1=s1, sum2=s2, sum3=s3, context_bound=context
    )


def discrepancy(points: Sequence[float]) -> float:
    """Star discrepancy D*_N by the exact sorted-points formula."""
    if not len(points):
        raise ValueError("empty point set")
    xs = sorted(float(x) for x in points)
    if xs[0] < 0.0 or xs[-1] >= 1.0:
        raise ValueError("points must lie in [0, 1)")
    N = len(xs)
    worst = 0.0
    for i, x in enumerate(xs, start=1):
        worst = max(worst, i / N - x, x - (i - 1) / N)
    return worst


def decay_fit(pairs: Sequence[Tuple[float, float]]) -> DecayFit:
    """Least squares of log(value) against log(X); nonpositive values are
    excluded and counted."""
    import numpy as np

    clean = [(x, v) for x, v in pairs if v > 0]
    if len(clean) < 3:
        raise ValueError("need at least 3 positive pairs")
    xs = np.log([p[0] for p in clean])
    ys = np.log([p[1] for p in clean])
    A = np.vstack([xs, np.ones_like(xs)]).T
    (slope, intercept), res, _, _ = np.linalg.lstsq(A, ys, rcond=None)
    residual = float(res[0]) if len(res) else 0.0
    return DecayFit(
        slope=float(slope),
        intercept=float(intercept),
        residual=residual,
        excluded=len(pairs) - len(clean),
    )


MIN_SEARCH_COLUMNS = ["X", "p_star", "m_value", "bound_X_pow_neg_rho_d", "ratio"]


def write_min_search_csv(run: ExperimentRun, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(MIN_SEARCH_COLUMNS)
        for r in run.rows:
            w.writerow([r.X, r.p_star, repr(r.m_value), repr(r.bound), repr(r.ratio)])


def run_to_json(run: ExperimentRun) -> str:
    doc = {
        "kind": run.kind,
        "f": run.f,
        "xi": run.xi,
        "config": run.config,
        "grid": run.grid,
        "rows": [asdict(r) if hasattr(r, "__dataclass_fields__") else r for r in run.rows],
        "fit": asdict(run.fit) if run.fit else None,
    }
    return json.dumps(doc, indent=2, sort_keys=True)
