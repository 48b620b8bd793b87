"""Exact real constants with certified enclosures at arbitrary precision.

A :class:`Constant` stores a number of the form ``q0 + q1*base`` where
``q0, q1`` are exact rationals and ``base`` is either 1 (purely rational
values) or a named irrational (``sqrt(k)`` for a non-square integer ``k``,
or ``pi``).  This affine form is closed under addition of rationals and
under rational scaling, which is exactly what the phase arithmetic needs
(``m*xi + h`` for integer ``m, h`` stays representable).

Symbolic constants are never cached at a fixed precision: every request
re-expands them to the working precision of the caller.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional, Tuple

import gmpy2
from mpmath import iv, mp

__all__ = ["Constant", "IncompatibleBases", "parse_constant"]

# base encodings: None for rational values, ("sqrt", k), or "pi"
_PI = "pi"


class IncompatibleBases(ValueError):
    """Arithmetic between two constants with different irrational parts."""


def _norm_sqrt(k: int) -> Tuple[Fraction, Optional[object]]:
    """Reduce sqrt(k) to rat*sqrt(k') with k' squarefree-ish (square part out)."""
    if k < 0:
        raise ValueError("negative radicand")
    root, exact = gmpy2.iroot(k, 2)
    if exact:
        return Fraction(int(root)), None
    # pull out the largest square divisor (k is small in practice)
    outer = 1
    d = 2
    while d * d <= k:
        while k % (d * d) == 0:
            k //= d * d
            outer *= d
        d += 1
    return Fraction(outer), ("sqrt", k)


class Constant:
    """Exact real of the form q0 + q1*base, base in {1, sqrt(k), pi}."""

    __slots__ = ("q0", "q1", "base")

    def __init__(self, q0, q1=0, base=None):
        q0 = Fraction(q0)
        q1 = Fraction(q1)
        if base is not None and isinstance(base, tuple) and base[0] == "sqrt":
            mul, base2 = _norm_sqrt(int(base[1]))
            if base2 is None:
                q0, q1, base = q0 + q1 * mul, Fraction(0), None
            else:
                q1, base = q1 * mul, base2
        if q1 == 0:
            base = None
        if base is None:
            q0, q1 = q0 + q1, Fraction(0)
        self.q0 = q0
        self.q1 = q1
        self.base = base

    # --- constructors -------------------------------------------------

    @classmethod
    def rational(cls, p, q=1) -> "Constant":
        return cls(Fraction(p, q))

    @classmethod
    def sqrt(cls, k: int) -> "Constant":
        return cls(0, 1, ("sqrt", k))

    @classmethod
    def pi(cls) -> "Constant":
        return cls(0, 1, _PI)

    @classmethod
    def golden(cls) -> "Constant":
        return cls(Fraction(1, 2), Fraction(1, 2), ("sqrt", 5))

    # --- predicates ---------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.base is None

    @property
    def is_integer(self) -> bool:
        return self.base is None and self.q0.denominator == 1

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError("not a rational constant: %s" % self)
        return self.q0

    # --- arithmetic (exact, partial) ---------------------------------

    def _combine_base(self, other: "Constant"):
        if self.base is None:
            return other.base
        if other.base is None or other.base == self.base:
            return self.base
        raise IncompatibleBases(f"{self} vs {other}")

    def __add__(self, other):
        other = _coerce(other)
        base = self._combine_base(other)
        return Constant(self.q0 + other.q0, self.q1 + other.q1, base)

    __radd__ = __add__

    def __neg__(self):
        return Constant(-self.q0, -self.q1, self.base)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other.is_rational:
            return Constant(self.q0 * other.q0, self.q1 * other.q0, self.base)
        if self.is_rational:
            return Constant(other.q0 * self.q0, other.q1 * self.q0, other.base)
        if self.base == other.base and self.base[0] == "sqrt":
            k = self.base[1]
            q0 = self.q0 * other.q0 + self.q1 * other.q1 * k
            q1 = self.q0 * other.q1 + self.q1 * other.q0
            return Constant(q0, q1, self.base)
        raise IncompatibleBases(f"{self} * {other}")

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Constant):
            try:
                other = _coerce(other)
            except (TypeError, ValueError):
                return NotImplemented
        return (self.q0, self.q1, self.base) == (other.q0, other.q1, other.base)

    def __hash__(self):
        return hash((self.q0, self.q1, self.base))

    def __lt__(self, other):
        other = _coerce(other)
        if self == other:
            return False
        # 120 fractional bits separate any pair of representable constants
        # occurring in practice; exact equality is handled above.
        with mp.workprec(160):
            return self.mpf() < other.mpf()

    def __le__(self, other):
        return self == _coerce(other) or self < other

    # --- numeric views ------------------------------------------------

    def _base_iv(self):
        if self.base is None:
            return iv.mpf(1)
        if self.base == _PI:
            return iv.pi
        return iv.sqrt(iv.mpf(self.base[1]))

    def interval(self):
        """Certified enclosure at the *current* iv working precision."""
        r0 = iv.mpf(self.q0.numerator) / self.q0.denominator
        if self.base is None:
            return r0
        r1 = iv.mpf(self.q1.numerator) / self.q1.denominator
        return r0 + r1 * self._base_iv()

    def mpf(self):
        """Point approximation at the current mp working precision."""
        v = mp.mpf(self.q0.numerator) / self.q0.denominator
        if self.base is None:
            return v
        b = mp.pi if self.base == _PI else mp.sqrt(self.base[1])
        return v + b * mp.mpf(self.q1.numerator) / self.q1.denominator

    def __float__(self):
        with mp.workprec(80):
            return float(self.mpf())

    def dyadic_enclosure(self, s: int) -> Optional[Tuple[int, int]]:
        """Integers (lo, hi) with lo <= 2^s*value <= hi and hi-lo <= 2.

        Exact integer arithmetic; returns None when the base admits no
        integer-root evaluation (pi).
        """
        lo = (self.q0.numerator << s) // self.q0.denominator
        hi = lo if (self.q0.numerator << s) % self.q0.denominator == 0 else lo + 1
        if self.base is None:
            return lo, hi
        if self.base == _PI:
            return None
        k = self.base[1]
        a, b = self.q1.numerator, self.q1.denominator
        m = int(gmpy2.isqrt((k * a * a) << (2 * s))) // b  # floor(2^s*|q1|*sqrt(k))
        if a >= 0:
            return lo + m, hi + m + 1
        return lo - m - 1, hi - m

    # --- misc ---------------------------------------------------------

    def __repr__(self):
        return f"Constant({self})"

    def __str__(self):
        if self.base is None:
            return str(self.q0)
        bs = "pi" if self.base == _PI else f"sqrt({self.base[1]})"
        parts = []
        if self.q0 != 0:
            parts.append(str(self.q0))
        coef = "" if self.q1 == 1 else f"{self.q1}*"
        parts.append(f"{coef}{bs}")
        return " + ".join(parts)


def _coerce(x) -> Constant:
    if isinstance(x, Constant):
        return x
    if isinstance(x, (int, Fraction)):
        return Constant(x)
    if isinstance(x, float):
        return Constant(Fraction(x).limit_denominator(10**12))
    raise TypeError(f"cannot coerce {x!r} to Constant")


def parse_constant(token: str) -> Constant:
    """Parse a constant token: decimal, p/q, sqrt2, sqrt(<int>), pi, golden."""
    t = token.strip().lower()
    if t == "pi":
        return Constant.pi()
    if t == "sqrt2":
        return Constant.sqrt(2)
    if t == "golden":
        return Constant.golden()
    if t.startswith("sqrt(") and t.endswith(")"):
        try:
            k = int(t[5:-1])
        except ValueError:
            raise ValueError(f"bad radicand in {token!r}") from None
        return Constant.sqrt(k)
    neg = t.startswith("-")
    if neg:
        t = t[1:]
    try:
        if "/" in t:
            num, den = t.split("/")
            val = Fraction(int(num), int(den))
        else:
            val = Fraction(t)  # exact decimal conversion
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"cannot parse constant {token!r}") from None
    return Constant(-val if neg else val)


# convenience singletons for common xi/exponent choices
SQRT2 = Constant.sqrt(2)
PI = Constant.pi()
GOLDEN = Constant.golden()


def _float_log2(c: Constant) -> float:
    v = float(c)
    return math.log2(abs(v)) if v else 0.0
