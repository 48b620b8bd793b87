import cmath
import math

import pytest

from ppdio.fourier_smoothing import (
    interval_majorant,
    montgomery_check,
    montgomery_lhs,
    vaaler_check,
    vaaler_coefficients,
    vaaler_error_majorant,
)


class TestCoefficients:
    def test_mean_value(self):
        v = vaaler_coefficients((0.2, 0.5), 8)
        assert v.coefficients[0] == pytest.approx(0.3)

    def test_wraparound_length(self):
        v = vaaler_coefficients((0.8, 0.1), 8)
        assert v.coefficients[0] == pytest.approx(0.3)

    def test_coefficient_decay(self, rng):
        # |c_h| <= 1/(|h|+1) for every h
        for _ in range(20):
            a = rng.random()
            b = rng.random()
            H = rng.randint(1, 40)
            v = vaaler_coefficients((a, b), H)
            assert set(v.coefficients) == set(range(-H, H + 1))
            for h, c in v.coefficients.items():
                if h != 0:
                    assert abs(c) <= 1.0 / (abs(h) + 1) + 1e-15

    def test_approximant_is_real(self, rng):
        v = vaaler_coefficients((0.1, 0.7), 12)
        for _ in range(20):
            t = rng.random()
            assert abs(v.approximant(t).imag) < 1e-12

    def test_rejects_bad_H(self):
        with pytest.raises(ValueError):
            vaaler_coefficients((0.0, 0.5), 0)


class TestMajorant:
    def test_value_at_zero(self):
        for H in (1, 5, 50):
            assert vaaler_error_majorant(H, 0.0) == pytest.approx(1.0)

    def test_fejer_zero(self):
        # H=1: kernel (sin 2 pi t / (2 sin pi t))^2 = cos^2(pi t), zero at 1/2
        assert vaaler_error_majorant(1, 0.5) == pytest.approx(0.0, abs=1e-15)

    def test_nonnegative(self, rng):
        for _ in range(100):
            assert vaaler_error_majorant(rng.randint(1, 30), rng.random()) >= 0.0

    def test_interval_majorant_is_half_sum(self):
        a, b, H, t = 0.2, 0.7, 9, 0.33
        expected = 0.5 * (
            vaaler_error_majorant(H, t - a) + vaaler_error_majorant(H, t - b)
        )
        assert interval_majorant((a, b), H, t) == pytest.approx(expected)


class TestVaalerCheck:
    def test_basic_interval(self):
        assert vaaler_check((0.0, 0.5), 10, 2000) <= 1e-12

    def test_random_intervals(self, rng):
        for _ in range(25):
            a = rng.random()
            b = rng.random()
            H = rng.randint(1, 30)
            assert vaaler_check((a, b), H, 1000) <= 1e-12

    def test_rejects_small_grid(self):
        with pytest.raises(ValueError):
            vaaler_check((0.0, 0.5), 5, 10)

    def test_smoothed_count_bound(self, rng):
        # counting points in [a, b) via the approximant differs from the
        # true count by at most the summed majorant
        a, b, H = 0.15, 0.4, 16
        v = vaaler_coefficients((a, b), H)
        pts = [rng.random() for _ in range(300)]
        # keep points away from the endpoints where the indicator jumps
        pts = [
            t for t in pts
            if min((t - a) % 1, (a - t) % 1) > 1e-3
            and min((t - b) % 1, (b - t) % 1) > 1e-3
        ]
        true_count = sum(v.indicator(t) for t in pts)
        smoothed = sum(v.approximant(t).real for t in pts)
        budget = sum(interval_majorant((a, b), H, t) for t in pts)
        assert abs(true_count - smoothed) <= budget + 1e-9


class TestMontgomery:
    def test_lhs_single_point(self):
        # one point at 1/4, M=2: |e(1/2 pi i)| + |e(pi i)| = 1 + 1
        assert montgomery_lhs([0.25], 2) == pytest.approx(2.0)

    def test_separated_points_hold(self):
        xs = [0.34, 0.5, 0.66]
        rep = montgomery_check(xs, 3)
        assert rep.hypothesis_ok
        assert rep.holds
        assert rep.lhs > rep.threshold == 0.5

    def test_hypothesis_flag(self):
        rep = montgomery_check([0.001, 0.5], 4)
        assert not rep.hypothesis_ok

    def test_random_separated_instances(self, rng):
        # guaranteed inequality whenever every ||x_n|| >= 1/M
        for _ in range(100):
            M = rng.randint(2, 12)
            n_pts = rng.randint(1, 20)
            lo, hi = 1.0 / M, 1.0 - 1.0 / M
            xs = [lo + (hi - lo) * rng.random() for _ in range(n_pts)]
            rep = montgomery_check(xs, M)
            assert rep.hypothesis_ok
            assert rep.holds, (xs, M, rep)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            montgomery_lhs([], 3)
