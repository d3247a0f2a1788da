"""
╔══════════════════════════════════════════╗
║     ROTDIFF — Test Suite: birkhoff       ║
╚══════════════════════════════════════════╝

Exact Birkhoff sums (sort vs merge oracle, cocycle identity,
point evaluation), L² profiles and the certified Fourier side.
"""

import math
import os
import sys
import unittest
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))
from birkhoff.config import BirkhoffConfig, psi_star
from birkhoff.fourier import (
    fourier_psi,
    fourier_y,
    fourier_y_modulus,
    l2_via_parseval,
    parseval_lower_bound,
    psi_hat_modulus_sq,
)
from birkhoff.sums import birkhoff_block, birkhoff_sum, birkhoff_value, l2_profile
from contfrac import PartialQuotients, convergents
from stepfun.algebra import add, subtract
from stepfun.function import StepFunction
from stepfun.measures import integrate, norms, variation
from utils.certified import lower, precision, upper
from utils.errors import ConfigError, ShadowNotCertifiedError


def golden_cfg(horizon=1000):
    return BirkhoffConfig.build(PartialQuotients.golden(), horizon)


@st.composite
def mean_zero_functions(draw):
    den = draw(st.integers(min_value=2, max_value=12))
    ticks = sorted(draw(st.sets(st.integers(min_value=0, max_value=den - 1),
                                min_size=2, max_size=min(den, 5))))
    values = draw(st.lists(st.integers(min_value=-3, max_value=3),
                           min_size=len(ticks), max_size=len(ticks)))
    f = StepFunction.make(den, ticks, values)
    return subtract(f, StepFunction.constant(integrate(f)))


class TestConfig(unittest.TestCase):

    def test_default_psi(self):
        cfg = golden_cfg(10)
        self.assertTrue(cfg.is_psi_star)
        self.assertEqual(cfg.horizon, 10)

    def test_nonzero_mean_rejected(self):
        psi = StepFunction.from_breakpoints([0, Fraction(1, 3)], [1, 0])
        with self.assertRaises(ConfigError):
            BirkhoffConfig.build(PartialQuotients.golden(), 10, psi)


class TestBirkhoffSums(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.cfg = golden_cfg()

    def test_empty_sum(self):
        self.assertEqual(birkhoff_sum(self.cfg, 0), StepFunction.zero())

    def test_single_term(self):
        self.assertEqual(birkhoff_sum(self.cfg, 1), psi_star())

    def test_golden_q5_sup(self):
        self.assertEqual(norms(birkhoff_sum(self.cfg, 5)).sup, 1)

    def test_denjoy_koksma_all_convergents(self):
        var = variation(psi_star())
        for c in convergents(PartialQuotients.golden(), 14):
            self.assertLessEqual(norms(birkhoff_sum(self.cfg, c.q)).sup, var)

    def test_sort_matches_merge(self):
        for n in (2, 3, 7, 13, 40):
            self.assertEqual(birkhoff_sum(self.cfg, n), birkhoff_sum(self.cfg, n, "merge"))

    def test_cocycle(self):
        for a, b in ((3, 5), (8, 13), (1, 20)):
            y = add(birkhoff_sum(self.cfg, a), birkhoff_block(self.cfg, a, b))
            self.assertEqual(y, birkhoff_sum(self.cfg, a + b))

    def test_point_values(self):
        self.assertEqual(birkhoff_value(self.cfg, 0, 0), 0)
        self.assertEqual(birkhoff_value(self.cfg, 0, 1), 1)
        y = birkhoff_sum(self.cfg, 1000)
        for x in (Fraction(0), Fraction(1, 3), Fraction(7, 11), Fraction(123, 1000)):
            self.assertEqual(birkhoff_value(self.cfg, x, 1000), y(x))

    def test_horizon_enforced(self):
        with self.assertRaises(ShadowNotCertifiedError):
            birkhoff_sum(self.cfg, 1001)
        with self.assertRaises(ShadowNotCertifiedError):
            birkhoff_block(self.cfg, 990, 20)

    def test_bad_arguments(self):
        with self.assertRaises(ValueError):
            birkhoff_block(self.cfg, -1, 3)
        with self.assertRaises(ValueError):
            birkhoff_sum(self.cfg, 3, method="fft")

    @given(mean_zero_functions(), st.integers(min_value=0, max_value=60))
    @settings(max_examples=40, deadline=None)
    def test_sort_matches_merge_random_psi(self, psi, n):
        cfg = BirkhoffConfig.build(PartialQuotients.ead(4, 2, 3), 60, psi)
        self.assertEqual(birkhoff_sum(cfg, n), birkhoff_sum(cfg, n, "merge"))

    @given(st.integers(min_value=0, max_value=400))
    @settings(max_examples=60, deadline=None)
    def test_psi_star_sums_have_parity_of_n(self, n):
        y = birkhoff_sum(self.cfg, n)
        self.assertTrue(all((v - n) % 2 == 0 for v in y.values), n)
        self.assertEqual(integrate(y), 0)

    @given(st.integers(min_value=1, max_value=8), st.integers(min_value=1, max_value=3),
           st.integers(min_value=0, max_value=2 ** 32), st.integers(min_value=0, max_value=150))
    @settings(max_examples=40, deadline=None)
    def test_parity_and_mean_any_alpha(self, A, d, seed, n):
        cfg = BirkhoffConfig.build(PartialQuotients.ead(A, d, seed), 150)
        y = birkhoff_sum(cfg, n)
        self.assertTrue(all((v - n) % 2 == 0 for v in y.values))
        self.assertEqual(integrate(y), 0)

    @given(mean_zero_functions(), st.integers(min_value=0, max_value=60))
    @settings(max_examples=40, deadline=None)
    def test_mean_zero_random_psi(self, psi, n):
        cfg = BirkhoffConfig.build(PartialQuotients.ead(4, 2, 3), 60, psi)
        self.assertEqual(integrate(birkhoff_sum(cfg, n)), 0)


class TestL2Profile(unittest.TestCase):

    def test_profile_matches_exact_norms(self):
        cfg = golden_cfg(40)
        profile = l2_profile(cfg, 40)
        self.assertEqual(profile[:2], [0, 1])
        for m in range(41):
            self.assertEqual(profile[m], norms(birkhoff_sum(cfg, m)).l2_sq)

    def test_profile_random_alpha(self):
        cfg = BirkhoffConfig.build(PartialQuotients.ead(5, 2, 1), 30)
        profile = l2_profile(cfg, 30)
        for m in (5, 17, 30):
            self.assertEqual(profile[m], norms(birkhoff_sum(cfg, m)).l2_sq)


class TestFourier(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.cfg = golden_cfg()

    def test_even_coefficients_vanish(self):
        self.assertTrue(fourier_psi(psi_star(), 2).contains(0, 0))
        self.assertEqual(fourier_psi(psi_star(), 2).width(), 0)
        self.assertEqual(fourier_y(self.cfg, 13, 4).width(), 0)
        self.assertEqual(upper(fourier_y_modulus(self.cfg, 13, 6)), 0)

    def test_first_coefficient(self):
        with precision(128):
            modulus = fourier_psi(psi_star(), 1).modulus()
        self.assertAlmostEqual(float(lower(modulus)), 2 / math.pi, places=12)
        self.assertAlmostEqual(float(upper(modulus)), 2 / math.pi, places=12)

    def test_zero_frequency_is_mean(self):
        self.assertTrue(fourier_psi(psi_star(), 0).contains(0))

    def test_variation_bound(self):
        psi = StepFunction.from_breakpoints([0, Fraction(1, 3), Fraction(1, 2)], [2, -1, -1])
        psi = subtract(psi, StepFunction.constant(integrate(psi)))
        var = variation(psi)
        for k in range(1, 12):
            with precision(128):
                sq = psi_hat_modulus_sq(psi, k)
            self.assertLessEqual(float(upper(sq)) ** 0.5, float(var) / (2 * math.pi * k) + 1e-12)

    def test_single_iterate_is_psi_hat(self):
        for k in (1, 3, 5):
            y = fourier_y(self.cfg, 1, k)
            psi_hat = fourier_psi(psi_star(), k)
            self.assertAlmostEqual(float(upper(y.re)), float(upper(psi_hat.re)), places=12)
            self.assertAlmostEqual(float(upper(y.im)), float(upper(psi_hat.im)), places=12)

    def test_modulus_small_at_convergent(self):
        # q = 610 is a convergent, 600 is not
        small = float(upper(fourier_y_modulus(self.cfg, 610, 1, true_alpha=True)))
        large = float(lower(fourier_y_modulus(self.cfg, 600, 1, true_alpha=True)))
        self.assertLess(small, 0.01)
        self.assertGreater(large, 0.1)

    def test_parseval_single_iterate(self):
        enclosure = l2_via_parseval(self.cfg, 1, 4000)
        self.assertLessEqual(float(lower(enclosure)), 1.0)
        self.assertGreaterEqual(float(upper(enclosure)), 1.0)
        self.assertGreater(float(lower(enclosure)), 0.99)

    def test_parseval_contains_exact_norm(self):
        exact = norms(birkhoff_sum(self.cfg, 5)).l2_sq
        enclosure = l2_via_parseval(self.cfg, 5, 2000)
        self.assertLessEqual(lower(enclosure), exact)
        self.assertGreaterEqual(upper(enclosure), exact)
        self.assertLessEqual(parseval_lower_bound(self.cfg, 5, 2000), exact)

    def test_parseval_lower_bound_zero_iterates(self):
        self.assertEqual(parseval_lower_bound(self.cfg, 0, 10), 0)


if __name__ == "__main__":
    unittest.main()
