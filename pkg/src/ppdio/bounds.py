"""Exponent calculus: saving exponents, differentiation-level selectors and
decomposition/smoothing parameter derivation with constraint reporting.

Rational inputs stay rational throughout (Fraction), so the identities
between the different closed forms can be asserted exactly.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Optional, Tuple, Union

__all__ = [
    "ExponentProfile",
    "DecompositionParams",
    "SmoothingParams",
    "ExponentComparison",
    "rho",
    "rho_d",
    "rho_MT",
    "compare_exponents",
    "hb_derivative_bound",
    "k_choice_type1",
    "k_choice_type2",
    "decomposition_params",
    "smoothing_params",
    "exponent_profile",
]

Real = Union[int, float, Fraction]

DEFAULT_EPSILON = 0.01


def _as_exact(x: Real) -> Optional[Fraction]:
    if isinstance(x, Rational):
        return Fraction(x)
    return None


def rho(theta: Real) -> Real:
    """Saving exponent 1/(8*theta^2 + 12*theta + 10).

    Exact rational for rational theta.  Values theta <= 3 are outside the
    regime the exponent was derived for; they warn but still evaluate.
    """
    th = float(theta)
    if th <= 1:
        raise ValueError("need theta > 1")
    if th <= 3:
        warnings.warn(f"theta={th} outside the derived range theta > 3", stacklevel=2)
    q = _as_exact(theta)
    if q is not None:
        return Fraction(1) / (8 * q * q + 12 * q + 10)
    return 1.0 / (8.0 * th * th + 12.0 * th + 10.0)


def rho_d(theta: Real) -> Real:
    """One third of rho(theta): the exponent of the fractional-part minimum."""
    r = rho(theta)
    return r / 3 if isinstance(r, Fraction) else r / 3.0


def rho_MT(c: Real, k: int) -> Fraction:
    """The earlier two-case exponent for f(x) = x^c + x^k, c non-integral."""
    cq = _as_exact(c)
    cf = float(c)
    if cf == int(cf) or (cq is not None and cq.denominator == 1):
        raise ValueError("c must be non-integral")
    if cf == k:
        raise ValueError("need c != k")
    if cf > k:
        ceil_c = int(cq.__ceil__()) if cq is not None else math.ceil(cf)
        return Fraction(1, 2 * (2 ** (ceil_c + 1) - 1))
    return Fraction(1, 4 ** (k - 1) * (k + 2))


@dataclass(frozen=True)
class ExponentComparison:
    ours: Real
    theirs: Fraction
    ours_better: bool


def compare_exponents(c: Real, k: int) -> ExponentComparison:
    """Compare the dominant-case exponent against the two-case formula, c > k."""
    if not float(c) > k:
        raise ValueError("need c > k")
    ours = rho_d(c)
    theirs = rho_MT(c, k)
    return ExponentComparison(ours=ours, theirs=theirs, ours_better=ours > theirs)


def hb_derivative_bound(F: float, X: float, k: int, epsilon: float = DEFAULT_EPSILON) -> float:
    """k-th derivative test bound X^(1+eps) * [ (F X^-k)^(1/k(k-1))
    + X^(-1/k(k-1)) + F^(-2/k^2(k-1)) ], evaluated in log space."""
    if k < 3:
        raise ValueError("need k >= 3")
    if F <= 0 or X <= 0:
        raise ValueError("need F, X positive")
    lF, lX = math.log(F), math.log(X)
    kk = k * (k - 1)
    t1 = math.exp((lF - k * lX) / kk)
    t2 = math.exp(-lX / kk)
    t3 = math.exp(-2.0 * lF / (k * kk))
    return math.exp((1.0 + epsilon) * lX) * (t1 + t2 + t3)


def _exact_ceil(x: Real) -> int:
    q = _as_exact(x)
    return int(q.__ceil__()) if q is not None else math.ceil(float(x))


def k_choice_type1(alpha: Real, rho_val: Real) -> int:
    """Differentiation level ceil(alpha/(1/2 - rho)) + 1 for the linear sums.

    Valid in the regime alpha > 1 + 2*rho; below that a different
    derivative test applies and this selector refuses.
    """
    if not float(alpha) > 1 + 2 * float(rho_val):
        raise ValueError("need alpha > 1 + 2*rho for this selector")
    aq, rq = _as_exact(alpha), _as_exact(rho_val)
    if aq is not None and rq is not None:
        k = _exact_ceil(aq / (Fraction(1, 2) - rq)) + 1
    else:
        k = math.ceil(float(alpha) / (0.5 - float(rho_val))) + 1
    return k


def k_choice_type2(alpha: Real, tau: Real) -> int:
    """Differentiation level ceil((3/2)(alpha - 1 + tau)) + 2 for bilinear sums."""
    if not float(alpha) >= 121 / 60:
        raise ValueError("need alpha >= 121/60 for this selector")
    aq, tq = _as_exact(alpha), _as_exact(tau)
    if aq is not None and tq is not None:
        return _exact_ceil(Fraction(3, 2) * (aq - 1 + tq)) + 2
    return math.ceil(1.5 * (float(alpha) - 1.0 + float(tau))) + 2


@dataclass(frozen=True)
class DecompositionParams:
    Y: int
    U: float
    V: float
    Z: Fraction  # half-integer
    U_min: bool       # U >= 3 and U < V < Z < X
    Z_vs_U: bool      # Z >= 4*U^2
    X_vs_ZU: bool     # X >= 64*Z^2*U
    V_vs_X: bool      # V^3 >= 32*X


def decomposition_params(Y: int, rho_val: Real) -> DecompositionParams:
    """Identity-decomposition parameters U = Y^(2 rho), V = 4 Y^(1/3) and the
    nearest half-integer Z to (1/9) Y^(1/2 - rho), with constraint flags.

    Violated constraints are reported, not raised: at desk scale the
    asymptotic parameter regime is typically out of reach and the flags
    document exactly how.
    """
    if Y < 16:
        raise ValueError("need Y >= 16")
    r = float(rho_val)
    U = float(Y) ** (2.0 * r)
    V = 4.0 * float(Y) ** (1.0 / 3.0)
    z_target = float(Y) ** (0.5 - r) / 9.0
    Z = Fraction(round(z_target - 0.5)) + Fraction(1, 2)
    if Z < Fraction(1, 2):
        Z = Fraction(1, 2)
    X = float(Y)
    Zf = float(Z)
    return DecompositionParams(
        Y=Y,
        U=U,
        V=V,
        Z=Z,
        U_min=(U >= 3.0 and U < V < Zf < X),
        Z_vs_U=(Zf >= 4.0 * U * U),
        X_vs_ZU=(X >= 64.0 * Zf * Zf * U),
        V_vs_X=(V ** 3 >= 32.0 * X),
    )


@dataclass(frozen=True)
class SmoothingParams:
    q: int
    H: int
    q_clamped: bool


def smoothing_params(m: int, X: int, rho_val: Real, epsilon: float = DEFAULT_EPSILON) -> SmoothingParams:
    """Digit parameter q = floor(sqrt(m X^rho)) (clamped to >= 2, flagged)
    and truncation H = ceil(X^(rho + eps))."""
    if m < 1 or X < 2:
        raise ValueError("need m >= 1 and X >= 2")
    r = float(rho_val)
    lX = math.log(X)
    q = math.floor(math.sqrt(m * math.exp(r * lX)))
    clamped = q < 2
    if clamped:
        q = 2
    H = math.ceil(math.exp((r + epsilon) * lX))
    return SmoothingParams(q=q, H=max(1, H), q_clamped=clamped)


@dataclass(frozen=True)
class ExponentProfile:
    theta: float
    rho: Real
    rho_d: Real
    rho_tilde_max: Real  # admissible divisibility exponent bound, rho/3
    y_range: Tuple[float, float]  # exponents (lower, upper) for the prime sums
    notes: str = ""


def exponent_profile(theta: Real, notes: str = "") -> ExponentProfile:
    r = rho(theta)
    rd = rho_d(theta)
    th = float(theta)
    return ExponentProfile(
        theta=th,
        rho=r,
        rho_d=rd,
        rho_tilde_max=rd,
        y_range=(-2.0 * th / 3.0, float(r) * (1.0 - float(r))),
        notes=notes,
    )
