"""Pseudo-polynomials f(x) = sum of a_j * x^e_j with certified evaluation.

Coefficients are positive exact constants, exponents are exact constants
>= 1 with at least one non-integral exponent.  Evaluation returns rigorous
two-sided enclosures; floors and mod-1 phases are certified by adaptive
precision escalation (start 128 bits, double, cap 16384).

Two evaluation engines coexist:

* an exact integer path (gmpy2 k-th roots on dyadic scalings) when all
  coefficients/exponents involved are rational or quadratic irrationals,
* mpmath interval arithmetic for everything else (pi exponents etc.).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import gmpy2
from mpmath import iv, mp, mpf

from .constants import Constant, IncompatibleBases, parse_constant

__all__ = [
    "Term",
    "PseudoPolynomial",
    "CertifiedReal",
    "Classification",
    "AmbiguousFloor",
    "PrecisionExceeded",
    "ParseError",
    "parse_pseudo_poly",
    "classify",
    "eval_certified",
    "floor_certified",
    "scaled_phase",
    "dist_to_int",
]

PREC_START = 128
PREC_MAX = 16384


class ParseError(ValueError):
    pass


class AmbiguousFloor(ArithmeticError):
    """Enclosure straddles an integer at maximum precision."""


class PrecisionExceeded(ArithmeticError):
    """Requested error bound unreachable within the precision cap."""


@dataclass(frozen=True)
class Term:
    coefficient: Constant
    exponent: Constant

    def __post_init__(self):
        if float(self.coefficient) <= 0:
            raise ValueError(f"coefficient must be positive: {self.coefficient}")
        if float(self.exponent) <= 0:
            # the parser enforces >= 1; the type admits (0,1) so that
            # fractional-power evaluation is still exercisable directly
            raise ValueError(f"exponent must be positive: {self.exponent}")


@dataclass(frozen=True)
class PseudoPolynomial:
    terms: Tuple[Term, ...]

    def __post_init__(self):
        if not self.terms:
            raise ValueError("empty pseudo-polynomial")
        for a, b in zip(self.terms, self.terms[1:]):
            if not a.exponent < b.exponent:
                raise ValueError("exponents must be strictly increasing")
        if all(t.exponent.is_integer for t in self.terms):
            raise ValueError("at least one exponent must be non-integral")

    @property
    def poly_part(self) -> Tuple[Term, ...]:
        return tuple(t for t in self.terms if t.exponent.is_integer)

    @property
    def pseudo_part(self) -> Tuple[Term, ...]:
        return tuple(t for t in self.terms if not t.exponent.is_integer)

    @property
    def deg_P(self) -> float:
        pp = self.poly_part
        return float(pp[-1].exponent) if pp else 0.0

    @property
    def deg_phi(self) -> float:
        return float(self.pseudo_part[-1].exponent)

    @property
    def theta_exact(self) -> Constant:
        return self.terms[-1].exponent

    @property
    def theta(self) -> float:
        return float(self.theta_exact)

    @property
    def dominant(self) -> bool:
        return self.terms[-1] is self.pseudo_part[-1]

    @property
    def all_rational(self) -> bool:
        """True when the exact integer evaluation path applies."""
        return all(
            t.exponent.is_rational and t.coefficient.base != "pi"
            for t in self.terms
        )

    def __str__(self):
        def fmt(t):
            c = "" if t.coefficient == Constant(1) else f"{t.coefficient}*"
            return f"{c}x^{t.exponent}"

        return " + ".join(fmt(t) for t in self.terms)


@dataclass(frozen=True)
class CertifiedReal:
    """midpoint +- radius, with the true value inside the closed interval."""

    midpoint: mpf
    radius: float

    def __post_init__(self):
        if not (self.radius >= 0 and self.radius < float("inf")):
            raise ValueError("radius must be finite and nonnegative")

    @property
    def exact(self) -> bool:
        return self.radius == 0


@dataclass(frozen=True)
class Classification:
    dominant: bool
    deg_P: float
    deg_phi: float
    theta: float


# ----------------------------------------------------------------------
# parsing
# ----------------------------------------------------------------------

_TERM_RE = re.compile(
    r"^(?:(?P<coeff>[^*]+)\*)?x(?:\^(?P<exp>.+))?$"
)


def parse_pseudo_poly(text: str) -> PseudoPolynomial:
    """Parse "a*x^e + ..." into a normalized PseudoPolynomial.

    Terms with equal exponents are merged by summing coefficients; terms
    are sorted by exponent.  Grammar per term: ``[coeff *] x [^ exponent]``
    with coeff/exponent a decimal, rational p/q, sqrt2, sqrt(<int>) or pi.
    """
    chunks = [c.strip() for c in text.replace("-", "+-").split("+") if c.strip()]
    if not chunks:
        raise ParseError(f"no terms in {text!r}")
    acc = {}
    for chunk in chunks:
        m = _TERM_RE.match(chunk.replace(" ", ""))
        if not m:
            raise ParseError(f"cannot parse term {chunk!r}")
        coeff = parse_constant(m.group("coeff")) if m.group("coeff") else Constant(1)
        exp = parse_constant(m.group("exp")) if m.group("exp") else Constant(1)
        if float(coeff) <= 0:
            raise ParseError(f"nonpositive coefficient in term {chunk!r}")
        if exp < Constant(1):
            raise ParseError(f"exponent below 1 in term {chunk!r}")
        try:
            acc[exp] = acc[exp] + coeff if exp in acc else coeff
        except IncompatibleBases:
            raise ParseError(
                f"cannot merge coefficients of equal exponent {exp}"
            ) from None
    terms = tuple(
        Term(coeff, exp) for exp, coeff in sorted(acc.items(), key=lambda kv: kv[0])
    )
    if all(t.exponent.is_integer for t in terms):
        raise ParseError(f"{text!r} has only integral exponents (not a pseudo-polynomial)")
    return PseudoPolynomial(terms)


def classify(f: PseudoPolynomial) -> Classification:
    return Classification(
        dominant=f.dominant, deg_P=f.deg_P, deg_phi=f.deg_phi, theta=f.theta
    )


# ----------------------------------------------------------------------
# certified evaluation
# ----------------------------------------------------------------------

def _term_interval(term: Term, x: int):
    """Enclosure of coeff * x^exponent at the current iv precision."""
    e = term.exponent
    c = term.coefficient.interval()
    if e.is_integer:
        return c * iv.mpf(x ** int(e.as_fraction()))
    if e.is_rational:
        fr = e.as_fraction()
        p, q = fr.numerator, fr.denominator
        root, exact = gmpy2.iroot(x ** p, q)
        if exact:
            return c * iv.mpf(int(root))
    xi = iv.mpf(x)
    return c * iv.exp(e.interval() * iv.log(xi))


def _interval_eval(f: PseudoPolynomial, x: int, prec: int):
    old = iv.prec
    iv.prec = prec
    try:
        total = iv.mpf(0)
        for t in f.terms:
            total = total + _term_interval(t, x)
        return total
    finally:
        iv.prec = old


def _exact_eval(f: PseudoPolynomial, x: int) -> Optional[Fraction]:
    """Exact rational value of f(x), if every term is exactly rational."""
    total = Fraction(0)
    for t in f.terms:
        if not (t.coefficient.is_rational and t.exponent.is_rational):
            return None
        fr = t.exponent.as_fraction()
        if fr.denominator == 1:
            val = Fraction(x ** fr.numerator)
        else:
            root, exact = gmpy2.iroot(x ** fr.numerator, fr.denominator)
            if not exact:
                return None
            val = Fraction(int(root))
        total += t.coefficient.as_fraction() * val
    return total


def _iv_bounds(x):
    """Lower/upper endpoints of an iv value as plain mpf at current mp prec."""
    lo, hi = x._mpi_
    return mp.make_mpf(lo), mp.make_mpf(hi)


def eval_certified(f: PseudoPolynomial, x: int, target_bits: int = 64) -> CertifiedReal:
    """Enclosure of f(x) with radius <= 2^-target_bits * |midpoint|."""
    if x < 1:
        raise ValueError("x must be a positive integer")
    if target_bits < 64:
        raise ValueError("target_bits must be >= 64")
    exact = _exact_eval(f, x)
    if exact is not None and exact.denominator == 1:
        with mp.workprec(max(PREC_START, exact.numerator.bit_length() + 8)):
            return CertifiedReal(mp.mpf(exact.numerator), 0.0)
    prec = max(PREC_START, target_bits + 32)
    while prec <= PREC_MAX:
        enc = _interval_eval(f, x, prec)
        with mp.workprec(prec):
            lo, hi = _iv_bounds(enc)
            midpoint = (lo + hi) / 2
            radius = float(hi - lo) / 2 + abs(float(midpoint)) * 2.0 ** (1 - prec)
            if radius <= 2.0 ** (-target_bits) * abs(float(midpoint)):
                return CertifiedReal(+midpoint, radius)
        prec *= 2
    raise PrecisionExceeded(
        f"cannot reach 2^-{target_bits} relative radius for f({x}) below {PREC_MAX} bits"
    )


# ----------------------------------------------------------------------
# dyadic integer enclosures (fast path, exact arithmetic)
# ----------------------------------------------------------------------

def _power_enclosure(x: int, fr: Fraction, s: int) -> Tuple[int, int]:
    """(lo, hi) with lo <= 2^s * x^fr <= hi, hi - lo <= 1; exact when possible."""
    p, q = fr.numerator, fr.denominator
    if q == 1:
        v = x ** p << s
        return v, v
    root, exact = gmpy2.iroot(x ** p << (s * q), q)
    r = int(root)
    return (r, r) if exact else (r, r + 1)


def _scaled_term_enclosure(coeff: Constant, x: int, fr: Fraction, s: int):
    """Enclosure of 2^s * coeff * x^fr, or None when coeff has a pi part."""
    plo, phi = _power_enclosure(x, fr, s)
    ce = coeff.dyadic_enclosure(s)
    if ce is None:
        return None
    clo, chi = ce
    cands = (clo * plo, clo * phi, chi * plo, chi * phi)
    # rescale 2^(2s) -> 2^s, outward
    return min(cands) >> s, -((-max(cands)) >> s)


def _dyadic_sum(terms: Sequence[Tuple[Constant, Fraction]], x: int, s: int):
    """Enclosure of 2^s * sum coeff*x^fr as integers, or None if inapplicable."""
    lo = hi = 0
    for coeff, fr in terms:
        enc = _scaled_term_enclosure(coeff, x, fr, s)
        if enc is None:
            return None
        lo += enc[0]
        hi += enc[1]
    return lo, hi


def _rational_terms(f: PseudoPolynomial):
    if not f.all_rational:
        return None
    return [(t.coefficient, t.exponent.as_fraction()) for t in f.terms]


def floor_certified(f: PseudoPolynomial, n: int) -> int:
    """Exact floor of f(n), certified by an integer-free enclosure."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    rat = _rational_terms(f)
    if rat is not None:
        s = 64
        while s <= PREC_MAX:
            lo, hi = _dyadic_sum(rat, n, s)
            if (lo >> s) == (hi >> s):
                return lo >> s
            s *= 2
        raise AmbiguousFloor(f"f({n}) within 2^-{PREC_MAX} of an integer")
    prec = PREC_START
    while prec <= PREC_MAX:
        enc = _interval_eval(f, n, prec)
        with mp.workprec(prec):
            lo, hi = _iv_bounds(enc)
            fa, fb = mp.floor(lo), mp.floor(hi)
            if fa == fb:
                return int(fa)
            if lo == hi and lo == fa:
                return int(fa)  # provably an exact integer
        prec *= 2
    raise AmbiguousFloor(f"f({n}) enclosure straddles an integer at {PREC_MAX} bits")


# ----------------------------------------------------------------------
# phases and distances mod 1
# ----------------------------------------------------------------------

PHASE_BITS = 40


def _scaled_terms(f: PseudoPolynomial, y: Constant):
    try:
        return [(y * t.coefficient, t.exponent.as_fraction())
                for t in f.terms if t.exponent.is_rational]
    except IncompatibleBases:
        return None


def scaled_phase(f: PseudoPolynomial, n: int, y) -> Tuple[float, float]:
    """Fractional part of y*f(n) with a certified absolute error <= 2^-40.

    Returns (phase, error_bound) with phase in [0, 1); the error bound is
    understood modulo one (phases near a wrap report the wrapped value).
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    y = y if isinstance(y, Constant) else Constant(Fraction(y))
    if all(t.exponent.is_rational for t in f.terms):
        scaled = _scaled_terms(f, y)
        if scaled is not None:
            mag = sum(abs(float(c)) * float(n) ** float(fr) for c, fr in scaled)
            s = PHASE_BITS + 16 + max(0, int(mag).bit_length())
            while s <= PREC_MAX:
                enc = _dyadic_sum(scaled, n, s)
                if enc is None:
                    break  # pi-valued coefficient: interval path below
                lo, hi = enc
                width = (hi - lo) / 2.0 ** s
                if width <= 2.0 ** (-PHASE_BITS - 1):
                    frac = (lo % (1 << s)) / 2.0 ** s
                    return frac % 1.0, width + 2.0 ** -52
                s *= 2
            else:
                raise PrecisionExceeded(
                    f"phase of y*f({n}) needs more than {PREC_MAX} bits"
                )
    # general interval path
    prec = PREC_START
    while prec <= PREC_MAX:
        old = iv.prec
        iv.prec = prec
        try:
            total = y.interval() * _interval_eval(f, n, prec)
        finally:
            iv.prec = old
        with mp.workprec(prec):
            lo, hi = _iv_bounds(total)
            delta = float(hi - lo)
            if delta <= 2.0 ** (-PHASE_BITS - 1):
                mid = (lo + hi) / 2
                frac = float(mid - mp.floor(mid))
                return frac % 1.0, delta + 2.0 ** -50
        prec *= 2
    raise PrecisionExceeded(f"phase of y*f({n}) needs more than {PREC_MAX} bits")


def dist_to_int(xi, N: int) -> float:
    """Distance of xi*N from the nearest integer, certified to 2^-40."""
    xi = xi if isinstance(xi, Constant) else Constant(Fraction(xi))
    scaled = xi * N
    if scaled.is_rational:
        fr = scaled.as_fraction()
        frac = fr - (fr.numerator // fr.denominator)
        return float(min(frac, 1 - frac))
    s = PHASE_BITS + 24
    enc = scaled.dyadic_enclosure(s)
    if enc is not None:
        lo, hi = enc
        frac = (lo % (1 << s)) / 2.0 ** s
        d = min(frac, 1.0 - frac)
        # enclosure width 2*2^-s << 2^-40; clamp into [0, 1/2]
        return max(0.0, min(0.5, d))
    prec = max(PREC_START, N.bit_length() + 96)
    while prec <= PREC_MAX:
        old = iv.prec
        iv.prec = prec
        try:
            total = scaled.interval()
        finally:
            iv.prec = old
        with mp.workprec(prec):
            lo, hi = _iv_bounds(total)
            if float(hi - lo) <= 2.0 ** (-PHASE_BITS - 2):
                mid = (lo + hi) / 2
                frac = float(mid - mp.floor(mid))
                return max(0.0, min(0.5, min(frac, 1.0 - frac)))
        prec *= 2
    raise PrecisionExceeded(f"xi*{N} needs more than {PREC_MAX} bits")
