"""Certified pseudo-polynomial arithmetic at primes: exponential sums,
smoothing devices, exponent calculus and desk-scale Diophantine experiments."""

from .constants import Constant, parse_constant
from .pseudo_poly import (
    AmbiguousFloor,
    CertifiedReal,
    PseudoPolynomial,
    Term,
    classify,
    dist_to_int,
    eval_certified,
    floor_certified,
    parse_pseudo_poly,
    scaled_phase,
)

__version__ = "0.1.0"
