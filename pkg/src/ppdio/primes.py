"""Segmented prime sieve and arithmetic weights (von Mangoldt, divisor counts).

Ranges are half-open (lo, hi].  Segments are sieved independently with a
numpy byte mask, so disjoint ranges can be processed concurrently and
concatenated; the merged output is ordered by n either way.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, List, Tuple

import numpy as np

__all__ = [
    "SieveSegment",
    "sieve_range",
    "iter_prime_arrays",
    "prime_count",
    "von_mangoldt_weights",
    "divisor_function",
]

DEFAULT_SEGMENT_BITS = 24
_MAX_HI = 1 << 40


@dataclass(frozen=True)
class SieveSegment:
    lo: int
    hi: int
    primes: np.ndarray  # ascending int64

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError("need lo < hi")


def _simple_sieve(limit: int) -> np.ndarray:
    if limit < 2:
        return np.array([], dtype=np.int64)
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return np.flatnonzero(mask).astype(np.int64)


def iter_prime_arrays(lo: int, hi: int, segment_bits: int = DEFAULT_SEGMENT_BITS) -> Iterator[np.ndarray]:
    """Yield ascending arrays of the primes in (lo, hi], segment by segment."""
    if not (1 <= lo < hi):
        raise ValueError("need 1 <= lo < hi")
    if hi > _MAX_HI:
        raise ValueError(f"range exceeds supported bound 2^40")
    span = 1 << segment_bits
    base = _simple_sieve(math.isqrt(hi))
    start = lo + 1
    while start <= hi:
        stop = min(start + span - 1, hi)  # inclusive
        mask = np.ones(stop - start + 1, dtype=bool)
        if start == 1:
            mask[0] = False
        for p in base:
            p = int(p)
            first = max(p * p, ((start + p - 1) // p) * p)
            if first > stop:
                if p * p > stop:
                    break
                continue
            mask[first - start :: p] = False
        seg = np.flatnonzero(mask).astype(np.int64) + start
        if start <= 1 < stop:
            seg = seg[seg >= 2]
        yield seg[seg <= hi]
        start = stop + 1


def sieve_range(lo: int, hi: int, segment_bits: int = DEFAULT_SEGMENT_BITS) -> SieveSegment:
    """Exact list of the primes in (lo, hi]."""
    parts = list(iter_prime_arrays(lo, hi, segment_bits))
    primes = np.concatenate(parts) if parts else np.array([], dtype=np.int64)
    return SieveSegment(lo, hi, primes)


def prime_count(X: int, segment_bits: int = DEFAULT_SEGMENT_BITS) -> int:
    """pi(X), exact."""
    if X < 2:
        raise ValueError("need X >= 2")
    return sum(len(a) for a in iter_prime_arrays(1, X, segment_bits))


def von_mangoldt_weights(lo: int, hi: int, segment_bits: int = DEFAULT_SEGMENT_BITS) -> List[Tuple[int, float]]:
    """Nonzero von Mangoldt values on (lo, hi] as (n, log p), ordered by n.

    Prime powers are identified exactly; logs carry <= 1 ulp relative error.
    """
    out = [(int(p), math.log(p)) for a in iter_prime_arrays(lo, hi, segment_bits) for p in a]
    # powers p^k, k >= 2: p <= sqrt(hi)
    for p in _simple_sieve(math.isqrt(hi)):
        p = int(p)
        v = p * p
        while v <= hi:
            if v > lo:
                out.append((v, math.log(p)))
            v *= p
    out.sort()
    return out


def divisor_function(n: int, m: int) -> int:
    """d_m(n): ordered factorizations of n into m parts, m in {2, 3, 4}."""
    if n < 1:
        raise ValueError("need n >= 1")
    if m not in (2, 3, 4):
        raise ValueError("order must be 2, 3 or 4")
    total = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            a = 0
            while n % d == 0:
                n //= d
                a += 1
            total *= math.comb(a + m - 1, m - 1)
        d += 1
    if n > 1:
        total *= m  # single prime: C(1+m-1, m-1) = m
    return total
