import random
from fractions import Fraction

import pytest
from mpmath import mp

from ppdio.constants import Constant
from ppdio.pseudo_poly import PseudoPolynomial, Term


def oracle_floor(f, n, prec=512):
    """Independent floor oracle: plain mpmath at >= 4x the working precision.

    Escalates until the value is provably away from an integer, falling
    back to exact rational root extraction for genuinely integral values.
    """
    while prec <= 1 << 16:
        with mp.workprec(prec):
            v = mp.mpf(0)
            for t in f.terms:
                v += t.coefficient.mpf() * mp.e ** (t.exponent.mpf() * mp.log(n))
            nearest = mp.nint(v)
            if abs(v - nearest) > mp.mpf(2) ** (-(prec // 2)):
                return int(mp.floor(v))
        prec *= 2
    # persistent near-integer: decide exactly (rational terms only)
    import gmpy2

    total = Fraction(0)
    for t in f.terms:
        fr = t.exponent.as_fraction()
        root, exact = gmpy2.iroot(n ** fr.numerator, fr.denominator)
        assert exact, "oracle cannot certify an irrational near-integer"
        total += t.coefficient.as_fraction() * int(root)
    return total.numerator // total.denominator


def random_pseudo_poly(rng: random.Random, max_terms=3):
    """Seeded random pseudo-polynomial with rational data, exponents in [1, 5]."""
    n_terms = rng.randint(1, max_terms)
    exps = set()
    while len(exps) < n_terms:
        exps.add(Fraction(rng.randint(2, 25), rng.choice([2, 3, 4, 5])))
    exps = sorted(e for e in exps if e >= 1)[:n_terms]
    if not exps or all(e.denominator == 1 for e in exps):
        exps = sorted(set(exps) | {Fraction(7, 2)})
    terms = tuple(
        Term(
            Constant(Fraction(rng.randint(1, 9), rng.randint(1, 4))),
            Constant(e),
        )
        for e in exps
    )
    return PseudoPolynomial(terms)


@pytest.fixture
def rng():
    return random.Random(20260824)


# one line per acceptance criterion, shown after the test summary
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
