"""Exponential sums over primes and bilinear Type I / Type II ranges.

Each sum is evaluated term by term from certified mod-1 phases and
accumulated with compensated summation (math.fsum over the full term
lists), so results are bit-reproducible for a fixed input.  Every record
carries a rigorous bound on the total phase error.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from .constants import Constant
from .primes import divisor_function, iter_prime_arrays
from .pseudo_poly import PseudoPolynomial, scaled_phase

__all__ = [
    "ExpSumRecord",
    "DyadicBlock",
    "dyadic_blocks",
    "prime_exp_sum",
    "lambda_exp_sum",
    "type1_sum",
    "type2_sum",
    "bound_ratio",
    "cancellation_slope",
    "write_csv",
]

TWO_PI = 2.0 * math.pi
PHASE_ERR_UNIT = 2.0 ** -40

Coeffs = Union[Callable[[int], float], Dict[int, float], Sequence[float]]


@dataclass
class ExpSumRecord:
    kind: str  # prime | lambda | type1 | type2
    params: dict
    value: complex
    terms: int
    phase_error_bound: float
    extra: dict = field(default_factory=dict)

    @property
    def magnitude(self) -> float:
        return abs(self.value)


@dataclass(frozen=True)
class DyadicBlock:
    lo: int
    hi: int  # range (lo, hi], hi <= 2*lo

    def __post_init__(self):
        if self.lo < 1 or self.hi <= self.lo or self.hi > 2 * self.lo:
            raise ValueError(f"not a dyadic block: ({self.lo}, {self.hi}]")


def dyadic_blocks(X: int) -> List[DyadicBlock]:
    """Disjoint blocks (lo, 2*lo] (last one clipped) covering (1, X]."""
    if X < 2:
        raise ValueError("need X >= 2")
    blocks = []
    lo = 1
    while lo < X:
        hi = min(2 * lo, X)
        blocks.append(DyadicBlock(lo, hi))
        lo = hi
    return blocks


def _accumulate(phases_errs) -> Tuple[complex, int, float]:
    """Compensated sum of e(phase) over (phase, err, weight) triples."""
    res, ims, errs = [], [], []
    n = 0
    for phase, err, w in phases_errs:
        a = TWO_PI * phase
        res.append(w * math.cos(a))
        ims.append(w * math.sin(a))
        errs.append(abs(w) * TWO_PI * err)
        n += 1
    return complex(math.fsum(res), math.fsum(ims)), n, math.fsum(errs)


def prime_exp_sum(f: PseudoPolynomial, y, X: int) -> ExpSumRecord:
    """sum over primes p <= X of e(y*f(p))."""
    if X < 2:
        raise ValueError("need X >= 2")
    gen = (
        scaled_phase(f, int(p), y) + (1.0,)
        for arr in iter_prime_arrays(1, X)
        for p in arr
    )
    value, terms, err = _accumulate(gen)
    return ExpSumRecord(
        kind="prime",
        params={"f": str(f), "y": str(y), "X": X},
        value=value,
        terms=terms,
        phase_error_bound=err,
    )


def lambda_exp_sum(f: PseudoPolynomial, y, X: int) -> ExpSumRecord:
    """von-Mangoldt-weighted sum over n <= X, with the prime-power subsum split out."""
    from .primes import von_mangoldt_weights

    if X < 2:
        raise ValueError("need X >= 2")
    weights = von_mangoldt_weights(1, X)
    prime_set_res, prime_set_ims = [], []
    pp_res, pp_ims = [], []
    errs = []
    seen_primes = set()
    for arr in iter_prime_arrays(1, X):
        seen_primes.update(int(p) for p in arr)
    for n, lam in weights:
        phase, err = scaled_phase(f, n, y)
        a = TWO_PI * phase
        re, im = lam * math.cos(a), lam * math.sin(a)
        errs.append(lam * TWO_PI * err)
        if n in seen_primes:
            prime_set_res.append(re)
            prime_set_ims.append(im)
        else:
            pp_res.append(re)
            pp_ims.append(im)
    value = complex(
        math.fsum(prime_set_res + pp_res), math.fsum(prime_set_ims + pp_ims)
    )
    pp_value = complex(math.fsum(pp_res), math.fsum(pp_ims))
    return ExpSumRecord(
        kind="lambda",
        params={"f": str(f), "y": str(y), "X": X},
        value=value,
        terms=len(weights),
        phase_error_bound=math.fsum(errs),
        extra={"prime_power_subsum": pp_value},
    )


def _coeff(a: Coeffs, m: int) -> float:
    if callable(a):
        return float(a(m))
    if isinstance(a, dict):
        return float(a.get(m, 0.0))
    return float(a[m]) if m < len(a) else 0.0


def _check_divisor_bound(value: float, m: int, order: int, label: str):
    if abs(value) > divisor_function(m, order) + 1e-9:
        raise ValueError(
            f"coefficient {label}[{m}]={value} exceeds the d_{order} bound"
        )


def type1_sum(a: Coeffs, f: PseudoPolynomial, y, M: int, X: int) -> ExpSumRecord:
    """sum_{m<=M} sum_{mn in (X/2, X]} a_m e(y*f(mn)), |a_m| <= d_4(m)."""
    if M > X:
        raise ValueError("need M <= X")
    triples = []
    for m in range(1, M + 1):
        am = _coeff(a, m)
        if am == 0.0:
            continue
        _check_divisor_bound(am, m, 4, "a")
        n_lo = (X // 2) // m + 1  # least n with m*n > X/2
        for n in range(n_lo, X // m + 1):
            phase, err = scaled_phase(f, m * n, y)
            triples.append((phase, err, am))
    value, terms, errb = _accumulate(triples)
    return ExpSumRecord(
        kind="type1",
        params={"f": str(f), "y": str(y), "X": X, "M": M},
        value=value,
        terms=terms,
        phase_error_bound=errb,
    )


def type2_sum(a: Coeffs, b: Coeffs, f: PseudoPolynomial, y, M: int, N: int, X: int) -> ExpSumRecord:
    """Bilinear sum over m ~ M, n ~ N, mn ~ X (dyadic ranges (T/2, T])."""
    triples = []
    for m in range(M // 2 + 1, M + 1):
        am = _coeff(a, m)
        if am == 0.0:
            continue
        _check_divisor_bound(am, m, 4, "a")
        for n in range(N // 2 + 1, N + 1):
            bn = _coeff(b, n)
            if bn == 0.0:
                continue
            _check_divisor_bound(bn, n, 3, "b")
            mn = m * n
            if X // 2 < mn <= X:
                phase, err = scaled_phase(f, mn, y)
                triples.append((phase, err, am * bn))
    value, terms, errb = _accumulate(triples)
    return ExpSumRecord(
        kind="type2",
        params={"f": str(f), "y": str(y), "X": X, "M": M, "N": N},
        value=value,
        terms=terms,
        phase_error_bound=errb,
    )


def bound_ratio(rec: ExpSumRecord, exponent: float) -> float:
    """|value| / X^exponent for the record's X."""
    X = rec.params["X"]
    return abs(rec.value) / float(X) ** exponent


def cancellation_slope(
    f: PseudoPolynomial, y, X_grid: Sequence[int]
) -> Tuple[float, float, List[Tuple[int, float]]]:
    """Least-squares slope of log|S(X)| against log X over a cumulative pass.

    Returns (slope, residual, [(X, |S(X)|), ...]).  Zero sums are excluded
    from the fit and reported with magnitude 0 in the rows.
    """
    if len(X_grid) < 3:
        raise ValueError("need at least 3 grid points")
    grid = sorted(int(x) for x in X_grid)
    res, ims = [], []
    rows = []
    gi = 0
    for arr in iter_prime_arrays(1, grid[-1]):
        for p in arr:
            p = int(p)
            while gi < len(grid) and p > grid[gi]:
                rows.append((grid[gi], abs(complex(math.fsum(res), math.fsum(ims)))))
                gi += 1
            phase, _ = scaled_phase(f, p, y)
            a = TWO_PI * phase
            res.append(math.cos(a))
            ims.append(math.sin(a))
    while gi < len(grid):
        rows.append((grid[gi], abs(complex(math.fsum(res), math.fsum(ims)))))
        gi += 1
    pairs = [(x, v) for x, v in rows if v > 0.0]
    if len(pairs) < 3:
        raise ValueError("too many zero sums for a slope fit")
    slope, _, residual = _loglog_fit(pairs)
    return slope, residual, rows


def _loglog_fit(pairs) -> Tuple[float, float, float]:
    import numpy as np

    xs = np.log([p[0] for p in pairs])
    ys = np.log([p[1] for p in pairs])
    A = np.vstack([xs, np.ones_like(xs)]).T
    (slope, intercept), res, _, _ = np.linalg.lstsq(A, ys, rcond=None)
    residual = float(res[0]) if len(res) else 0.0
    return float(slope), float(intercept), residual


CSV_COLUMNS = [
    "kind", "f", "y", "X", "M", "N",
    "re", "im", "abs", "terms", "phase_error", "ratio_vs_exponent",
]


def write_csv(records: Sequence[ExpSumRecord], path, exponent: Optional[float] = None):
    """Emit records in the fixed CSV schema (one row per record)."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(CSV_COLUMNS)
        for r in records:
            ratio = bound_ratio(r, exponent) if exponent is not None else ""
            w.writerow([
                r.kind,
                r.params.get("f", ""),
                r.params.get("y", ""),
                r.params.get("X", ""),
                r.params.get("M", ""),
                r.params.get("N", ""),
                repr(r.value.real),
                repr(r.value.imag),
                repr(abs(r.value)),
                r.terms,
                repr(r.phase_error_bound),
                repr(ratio) if ratio != "" else "",
            ])
