import math
import random
from fractions import Fraction

import pytest
from mpmath import mp

from conftest import oracle_floor, random_pseudo_poly
from ppdio.constants import SQRT2, Constant, parse_constant
from ppdio.pseudo_poly import (
    AmbiguousFloor,
    ParseError,
    PseudoPolynomial,
    Term,
    classify,
    dist_to_int,
    eval_certified,
    floor_certified,
    parse_pseudo_poly,
    scaled_phase,
)


class TestParse:
    def test_basic(self):
        f = parse_pseudo_poly("x^3.5 + x")
        assert [(str(t.coefficient), str(t.exponent)) for t in f.terms] == [
            ("1", "1"),
            ("1", "7/2"),
        ]
        assert f.dominant
        assert f.theta == 3.5

    def test_non_dominant(self):
        f = parse_pseudo_poly("x^2 + x^1.5")
        c = classify(f)
        assert (c.deg_P, c.deg_phi, c.dominant) == (2.0, 1.5, False)

    def test_all_integral_rejected(self):
        with pytest.raises(ParseError):
            parse_pseudo_poly("x^2 + x^2")

    def test_merge_equal_exponents(self):
        f = parse_pseudo_poly("2*x^3.5 + 3*x^7/2")
        assert len(f.terms) == 1
        assert f.terms[0].coefficient == Constant(5)

    def test_symbolic_constants(self):
        f = parse_pseudo_poly("sqrt2*x^pi")
        assert f.terms[0].coefficient == SQRT2
        assert f.theta == pytest.approx(math.pi)

    @pytest.mark.parametrize("bad", ["", "x^0.5", "0*x^1.5", "y^2", "x^-3"])
    def test_rejects(self, bad):
        with pytest.raises(ParseError):
            parse_pseudo_poly(bad)


class TestClassify:
    def test_dominant(self):
        assert classify(parse_pseudo_poly("x^2.5 + x^2")).dominant
        assert classify(parse_pseudo_poly("x^2.5 + x^2")).theta == 2.5

    def test_non_dominant(self):
        c = classify(parse_pseudo_poly("x^1.5 + x^3"))
        assert not c.dominant
        assert c.theta == 3.0

    def test_pure_pseudo(self):
        c = classify(parse_pseudo_poly("x^pi"))
        assert c.dominant
        assert c.theta == pytest.approx(math.pi)

    def test_invariant_under_scaling(self, rng):
        for _ in range(20):
            f = random_pseudo_poly(rng)
            c = rng.randint(1, 100)
            g = PseudoPolynomial(
                tuple(Term(t.coefficient * c, t.exponent) for t in f.terms)
            )
            assert classify(f) == classify(g)


class TestEvalCertified:
    def test_exact_integer(self):
        f = PseudoPolynomial(
            (Term(Constant(1), Constant(Fraction(1, 2))), Term(Constant(1), Constant(2)))
        )
        r = eval_certified(f, 9)
        assert r.radius == 0.0
        assert r.midpoint == 84

    def test_against_oracle(self):
        f = parse_pseudo_poly("x^3.5")
        r = eval_certified(f, 2)
        with mp.workprec(512):
            truth = mp.e ** (mp.mpf(7) / 2 * mp.log(2))
            assert abs(truth - r.midpoint) <= r.radius

    def test_large_argument_relative_radius(self):
        f = parse_pseudo_poly("x^3.5 + x")
        r = eval_certified(f, 10**6)
        assert r.radius <= 2.0 ** -64 * abs(float(r.midpoint))

    def test_radius_monotone_in_precision(self):
        f = parse_pseudo_poly("x^3.5 + 2*x^1.5")
        r1 = eval_certified(f, 12345, target_bits=64)
        r2 = eval_certified(f, 12345, target_bits=128)
        assert r2.radius <= r1.radius

    def test_rejects_bad_args(self):
        f = parse_pseudo_poly("x^3.5")
        with pytest.raises(ValueError):
            eval_certified(f, 0)
        with pytest.raises(ValueError):
            eval_certified(f, 5, target_bits=32)


class TestFloorCertified:
    @pytest.mark.parametrize(
        "text,n,expected",
        [
            ("x^3.5", 2, 11),
            ("x^3.5 + x", 2, 13),
            ("x^1.5", 4, 8),
        ],
    )
    def test_examples(self, text, n, expected):
        assert floor_certified(parse_pseudo_poly(text), n) == expected

    def test_exact_square_root(self):
        f = PseudoPolynomial((Term(Constant(1), Constant(Fraction(1, 2))),))
        assert floor_certified(f, 4) == 2

    def test_exact_sum(self):
        f = PseudoPolynomial(
            (Term(Constant(1), Constant(Fraction(1, 2))), Term(Constant(1), Constant(2)))
        )
        assert floor_certified(f, 9) == 84

    def test_matches_oracle_random(self, rng):
        for _ in range(300):
            f = random_pseudo_poly(rng)
            n = rng.randint(1, 10**6)
            assert floor_certified(f, n) == oracle_floor(f, n)

    def test_pi_exponent(self):
        f = parse_pseudo_poly("x^pi")
        assert floor_certified(f, 3) == oracle_floor(f, 3)


class TestScaledPhase:
    def test_integer_phase(self):
        f = parse_pseudo_poly("x^2 + 0.000001*x^1.5")
        g = parse_pseudo_poly("x^2 + x^1.5")
        phase, err = scaled_phase(g, 4, 1)  # 16 + 8 integer
        assert phase == pytest.approx(0.0, abs=1e-12) or phase == pytest.approx(1.0, abs=1e-12)
        assert err <= 2.0 ** -40

    def test_half_phase(self):
        g = parse_pseudo_poly("x^2 + x^1.5")  # at x=9: 81 + 27
        phase, err = scaled_phase(g, 9, Constant(Fraction(1, 2)))
        assert phase == pytest.approx(0.0) or phase == pytest.approx(1.0)
        phase, _ = scaled_phase(parse_pseudo_poly("x^1.5"), 9, Constant(Fraction(1, 2)))
        assert phase == pytest.approx(0.5)

    def test_against_oracle(self):
        f = parse_pseudo_poly("x^3.5")
        phase, err = scaled_phase(f, 2, 1)
        with mp.workprec(512):
            truth = mp.e ** (mp.mpf(7) / 2 * mp.log(2))
            frac = float(truth - mp.floor(truth))
        assert abs(phase - frac) <= err

    def test_reconstruction(self, rng):
        # phase + floor(y*f(n)) reconstructs y*f(n) within the bound
        for _ in range(30):
            f = random_pseudo_poly(rng)
            n = rng.randint(2, 10**4)
            y = Constant(Fraction(rng.randint(1, 5), rng.randint(1, 5)))
            phase, err = scaled_phase(f, n, y)
            with mp.workprec(512):
                v = mp.mpf(0)
                for t in f.terms:
                    v += t.coefficient.mpf() * mp.e ** (t.exponent.mpf() * mp.log(n))
                v *= y.mpf()
                delta = abs(float(v - mp.floor(v) - phase))
            assert min(delta, 1 - delta) <= err + 1e-12

    def test_irrational_y(self):
        f = parse_pseudo_poly("x^3.5 + x")
        phase, err = scaled_phase(f, 7, SQRT2)
        with mp.workprec(512):
            v = mp.sqrt(2) * (mp.e ** (mp.mpf(7) / 2 * mp.log(7)) + 7)
            frac = float(v - mp.floor(v))
        assert abs(phase - frac) <= err + 1e-12


class TestDistToInt:
    def test_sqrt2_small(self):
        assert dist_to_int(SQRT2, 1) == pytest.approx(math.sqrt(2) - 1, abs=1e-12)

    def test_rational(self):
        assert dist_to_int(Fraction(1, 4), 2) == pytest.approx(0.5)

    def test_sqrt2_eleven(self):
        with mp.workprec(256):
            v = 11 * mp.sqrt(2)
            truth = float(min(v - mp.floor(v), mp.ceil(v) - v))
        assert dist_to_int(SQRT2, 11) == pytest.approx(truth, abs=1e-12)

    def test_huge_multiplier(self):
        N = 10**21 + 12345
        with mp.workprec(N.bit_length() + 128):
            v = N * mp.sqrt(2)
            truth = float(min(v - mp.floor(v), mp.ceil(v) - v))
        assert dist_to_int(SQRT2, N) == pytest.approx(truth, abs=2.0 ** -40)

    def test_range(self, rng):
        for _ in range(50):
            d = dist_to_int(SQRT2, rng.randint(1, 10**12))
            assert 0.0 <= d <= 0.5
