"""Trigonometric approximation of interval indicators and a pigeonhole bound.

The indicator of an interval I modulo one is approximated by a degree-H
trigonometric polynomial built from the classical extremal (Beurling-
Selberg type) approximation to the sawtooth.  The coefficients satisfy
c_0 = |I| and |c_h| <= 1/(|h|+1); the pointwise error is controlled by a
normalized Fejer kernel centred at each endpoint of the interval.

Also implements the pigeonhole inequality: if every x_n is at distance
at least 1/M from the integers, then sum_{m<=M} |sum_n e(m x_n)| > N/6.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Dict, Sequence, Tuple

__all__ = [
    "VaalerApprox",
    "vaaler_coefficients",
    "vaaler_error_majorant",
    "interval_majorant",
    "vaaler_check",
    "montgomery_lhs",
    "montgomery_check",
    "MontgomeryReport",
]

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class VaalerApprox:
    interval: Tuple[float, float]  # [left, right) read modulo one
    H: int
    coefficients: Dict[int, complex]  # h -> c_h for |h| <= H

    @property
    def length(self) -> float:
        a, b = self.interval
        return (b - a) % 1.0 if (b - a) % 1.0 != 0 or a == b else 1.0

    def approximant(self, t: float) -> complex:
        return sum(c * cmath.exp(2j * math.pi * h * t)
                   for h, c in sorted(self.coefficients.items()))

    def indicator(self, t: float) -> float:
        a, _ = self.interval
        return 1.0 if ((t - a) % 1.0) < self.length else 0.0


def _sawtooth_multiplier(t: float) -> float:
    """Fourier multiplier of the extremal sawtooth approximation, t in (0, 1)."""
    return math.pi * t * (1.0 - t) / math.tan(math.pi * t) + t


def vaaler_coefficients(interval: Tuple[float, float], H: int) -> VaalerApprox:
    """Degree-H approximation of the indicator of [a, b) mod 1.

    The sawtooth psi(x) = {x} - 1/2 is approximated by
    psi_H(x) = sum_{1<=|h|<=H} i*J(|h|/(H+1))/(2 pi h) e(hx); the interval
    indicator is assembled as (b-a) + psi_H(x-b) - psi_H(x-a).
    """
    if H < 1:
        raise ValueError("need H >= 1")
    a, b = interval
    length = (b - a) % 1.0
    if b != a and length == 0.0:
        length = 1.0  # full circle
    coeffs: Dict[int, complex] = {0: complex(length)}
    for h in range(1, H + 1):
        mult = 1j * _sawtooth_multiplier(h / (H + 1)) / (TWO_PI * h)
        for hh in (h, -h):
            A = mult if hh > 0 else -mult
            c = A * (cmath.exp(-2j * math.pi * hh * b) - cmath.exp(-2j * math.pi * hh * a))
            coeffs[hh] = c
    return VaalerApprox((a, b), H, coeffs)


def vaaler_error_majorant(H: int, t: float) -> float:
    """Normalized Fejer kernel (1/(H+1)) sum_{|h|<=H} (1-|h|/(H+1)) e(ht).

    Real, nonnegative, equal to 1 at t = 0.
    """
    if H < 1:
        raise ValueError("need H >= 1")
    s = math.sin(math.pi * t)
    if abs(s) < 1e-300:
        return 1.0
    return (math.sin(math.pi * (H + 1) * t) / ((H + 1) * s)) ** 2


def interval_majorant(interval: Tuple[float, float], H: int, t: float) -> float:
    """Pointwise bound for the indicator approximation error at t.

    Half the Fejer majorant centred at each endpoint; this is the exact
    two-endpoint form of the sawtooth error bound.
    """
    a, b = interval
    return 0.5 * (vaaler_error_majorant(H, t - a) + vaaler_error_majorant(H, t - b))


def vaaler_check(interval: Tuple[float, float], H: int, grid_size: int) -> float:
    """Max over a uniform grid of |indicator - approximant| - majorant.

    Grid points within 1/(10*grid_size) of either endpoint (mod 1) are
    skipped: the inequality concerns the trigonometric approximant, not
    the indicator's convention at its jumps.  A result <= ~1e-12 means
    the bound holds everywhere tested.
    """
    import numpy as np

    if grid_size < 100:
        raise ValueError("need grid_size >= 100")
    approx = vaaler_coefficients(interval, H)
    a, b = interval
    guard = 1.0 / (10.0 * grid_size)
    t = np.arange(grid_size) / grid_size
    keep = (_circ_dist_arr(t, a) > guard) & (_circ_dist_arr(t, b) > guard)
    t = t[keep]
    z = np.exp(2j * np.pi * t)
    zh = np.ones_like(z)
    acc = np.full(t.shape, approx.coefficients[0], dtype=complex)
    for h in range(1, H + 1):
        zh = zh * z
        acc += approx.coefficients[h] * zh + approx.coefficients[-h] * np.conj(zh)
    indicator = (((t - a) % 1.0) < approx.length).astype(float)
    majorant = 0.5 * (_fejer_arr(H, t - a) + _fejer_arr(H, t - b))
    return float(np.max(np.abs(indicator - acc) - majorant))


def _fejer_arr(H, u):
    import numpy as np

    s = np.sin(np.pi * u)
    with np.errstate(divide="ignore", invalid="ignore"):
        v = (np.sin(np.pi * (H + 1) * u) / ((H + 1) * s)) ** 2
    return np.where(np.abs(s) < 1e-300, 1.0, v)


def _circ_dist_arr(x, y):
    import numpy as np

    d = (x - y) % 1.0
    return np.minimum(d, 1.0 - d)


def _circ_dist(x: float, y: float) -> float:
    d = (x - y) % 1.0
    return min(d, 1.0 - d)


def montgomery_lhs(xs: Sequence[float], M: int) -> float:
    """sum_{m<=M} |sum_n e(m*x_n)| with compensated summation."""
    if not len(xs):
        raise ValueError("empty sequence")
    out = []
    for m in range(1, M + 1):
        re = math.fsum(math.cos(TWO_PI * m * x) for x in xs)
        im = math.fsum(math.sin(TWO_PI * m * x) for x in xs)
        out.append(math.hypot(re, im))
    return math.fsum(out)


@dataclass(frozen=True)
class MontgomeryReport:
    holds: bool
    lhs: float
    threshold: float  # N/6
    hypothesis_ok: bool


def montgomery_check(xs: Sequence[float], M: int) -> MontgomeryReport:
    """Check the pigeonhole inequality on a concrete sequence.

    hypothesis_ok records whether every ||x_n|| >= 1/M; when it is true
    the inequality lhs > N/6 is guaranteed.
    """
    lhs = montgomery_lhs(xs, M)
    threshold = len(xs) / 6.0
    hyp = all(min(x % 1.0, 1.0 - x % 1.0) >= 1.0 / M for x in xs)
    return MontgomeryReport(
        holds=lhs > threshold, lhs=lhs, threshold=threshold, hypothesis_ok=hyp
    )
