"""
╔══════════════════════════════════════════╗
║     ROTDIFF — Test Suite: stepfun        ║
╚══════════════════════════════════════════╝

Canonical form, rotation, algebra, exact functionals and laws.
"""

import os
import sys
import unittest
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))
from birkhoff.config import psi_star
from stepfun.algebra import add, add_many, multiply, negate, rotate, scale, subtract
from stepfun.distribution import ValueDistribution
from stepfun.function import StepFunction
from stepfun.io import from_json, rows, to_json
from stepfun.measures import (
    autocorrelation,
    distribution,
    integrate,
    integrate_product,
    interval_integrals,
    norms,
    variation,
)
from utils.errors import UsageError

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)


@st.composite
def step_functions(draw, max_den=24, max_pieces=6):
    den = draw(st.integers(min_value=1, max_value=max_den))
    ticks = sorted(draw(st.sets(st.integers(min_value=0, max_value=den - 1),
                                min_size=1, max_size=min(den, max_pieces))))
    values = draw(st.lists(st.integers(min_value=-5, max_value=5),
                           min_size=len(ticks), max_size=len(ticks)))
    return StepFunction.make(den, ticks, values)


class TestStepFunction(unittest.TestCase):

    def test_psi_star_values(self):
        psi = psi_star()
        self.assertEqual(psi(QUARTER), 1)
        self.assertEqual(psi(HALF), -1)
        self.assertEqual(psi(0), 1)
        self.assertEqual(psi(Fraction(7, 4)), -1)

    def test_canonical_merges_equal_neighbours(self):
        f = StepFunction.make(4, [0, 1, 2, 3], [1, 1, -1, -1])
        self.assertEqual(f, psi_star())
        self.assertEqual(f.pieces, 2)

    def test_wrapping_equal_values_merge(self):
        # value 2 on [3/4, 1) ∪ [0, 1/4) is one piece
        f = StepFunction.make(4, [0, 1, 3], [2, 0, 2])
        self.assertEqual(f.breakpoints, (QUARTER, Fraction(3, 4)))

    def test_constant(self):
        f = StepFunction.make(8, [0, 3], [5, 5])
        self.assertTrue(f.is_constant)
        self.assertEqual(f(Fraction(1, 3)), 5)

    def test_from_breakpoints_validation(self):
        with self.assertRaises(ValueError):
            StepFunction.from_breakpoints([HALF, QUARTER], [1, 2])
        with self.assertRaises(ValueError):
            StepFunction.from_breakpoints([0, 1], [1, 2])

    def test_indicator_wraps(self):
        f = StepFunction.indicator(Fraction(3, 4), QUARTER)
        self.assertEqual(f(0), 1)
        self.assertEqual(f(HALF), 0)
        self.assertEqual(integrate(f), HALF)


class TestAlgebra(unittest.TestCase):

    def test_psi_star_plus_quarter_rotation(self):
        f = add(psi_star(), rotate(psi_star(), QUARTER))
        self.assertEqual(f.pieces, 4)
        self.assertEqual([f(Fraction(k, 8)) for k in (1, 3, 5, 7)], [2, 0, -2, 0])

    def test_rotate_full_turn(self):
        self.assertEqual(rotate(psi_star(), 1), psi_star())

    def test_rotate_by_half_negates_psi_star(self):
        self.assertEqual(rotate(psi_star(), HALF), negate(psi_star()))

    def test_scale_and_subtract(self):
        psi = psi_star()
        self.assertEqual(scale(psi, 0), StepFunction.zero())
        self.assertEqual(subtract(scale(psi, 3), psi), scale(psi, 2))

    def test_multiply_square_of_psi_star(self):
        self.assertEqual(multiply(psi_star(), psi_star()), StepFunction.constant(1))

    def test_add_many_empty(self):
        self.assertEqual(add_many([]), StepFunction.zero())

    @given(step_functions())
    @settings(max_examples=80, deadline=None)
    def test_make_is_idempotent(self, f):
        self.assertEqual(StepFunction.make(f.den, f.ticks, f.values), f)
        # redundant ticks on a finer grid collapse back to f
        fine = [t * 3 + j for t in range(f.den) for j in range(3)]
        values = [f(Fraction(t, 3 * f.den)) for t in fine]
        self.assertEqual(StepFunction.make(3 * f.den, fine, values), f)

    @given(step_functions(), st.fractions(min_value=0, max_value=1, max_denominator=40))
    @settings(max_examples=80, deadline=None)
    def test_rotation_keeps_variation_and_law(self, f, gamma):
        g = rotate(f, gamma)
        self.assertEqual(variation(g), variation(f))
        self.assertEqual(distribution(g), distribution(f))
        self.assertEqual(norms(g), norms(f))

    @given(step_functions(), step_functions())
    @settings(max_examples=80, deadline=None)
    def test_variation_subadditive(self, f, g):
        self.assertLessEqual(variation(add(f, g)), variation(f) + variation(g))
        self.assertEqual(variation(negate(f)), variation(f))

    @given(step_functions(), step_functions(), st.fractions(min_value=0, max_value=1,
                                                           max_denominator=30))
    @settings(max_examples=80, deadline=None)
    def test_pointwise_identities(self, f, g, x):
        x = x % 1
        self.assertEqual(add(f, g)(x), f(x) + g(x))
        self.assertEqual(multiply(f, g)(x), f(x) * g(x))
        self.assertEqual(rotate(f, Fraction(1, 7))(x), f((x + Fraction(1, 7)) % 1))

    @given(st.lists(step_functions(), min_size=1, max_size=7))
    @settings(max_examples=40, deadline=None)
    def test_add_many_matches_sequential_sum(self, fs):
        total = StepFunction.zero()
        for f in fs:
            total = add(total, f)
        self.assertEqual(add_many(fs), total)


class TestMeasures(unittest.TestCase):

    def test_variation(self):
        self.assertEqual(variation(StepFunction.constant(3)), 0)
        self.assertEqual(variation(psi_star()), 4)

    def test_psi_star_norms(self):
        n = norms(psi_star())
        self.assertEqual((n.mean, n.l2_sq, n.sup), (0, 1, 1))

    def test_zero_norms(self):
        n = norms(StepFunction.zero())
        self.assertEqual((n.mean, n.l2_sq, n.l4_4, n.sup), (0, 0, 0, 0))

    def test_third_plateau(self):
        f = StepFunction.from_breakpoints([0, Fraction(1, 3)], [3, 0])
        n = norms(f)
        self.assertEqual((n.mean, n.l2_sq, n.l4_4, n.sup), (1, 3, 27, 3))

    def test_autocorrelation_of_psi_star(self):
        psi = psi_star()
        self.assertEqual(autocorrelation(psi, 0), 1)
        self.assertEqual(autocorrelation(psi, QUARTER), 0)
        self.assertEqual(autocorrelation(psi, HALF), -1)

    def test_interval_integrals(self):
        f = add(psi_star(), rotate(psi_star(), QUARTER))
        pieces = interval_integrals(f, psi_star())
        # f is 2, 0 on [0, 1/2) and −2, 0 on [1/2, 1)
        self.assertEqual(pieces, [HALF, -HALF])

    def test_interval_integrals_constant_partition(self):
        self.assertEqual(interval_integrals(psi_star(), StepFunction.constant(1)), [0])

    @given(step_functions(), step_functions())
    @settings(max_examples=60, deadline=None)
    def test_interval_integrals_sum_to_integral(self, f, partition):
        self.assertEqual(sum(interval_integrals(f, partition)), integrate(f))

    @given(step_functions(), step_functions())
    @settings(max_examples=60, deadline=None)
    def test_integrate_product_symmetric(self, f, g):
        self.assertEqual(integrate_product(f, g), integrate_product(g, f))


class TestDistribution(unittest.TestCase):

    def test_psi_star_law(self):
        law = distribution(psi_star())
        self.assertEqual(law.atoms, ((-1, HALF), (1, HALF)))
        self.assertEqual(law.symmetry_defect(), 0)

    def test_constant_law(self):
        self.assertEqual(distribution(StepFunction.constant(7)).atoms, ((7, 1),))

    def test_four_piece_law(self):
        law = distribution(add(psi_star(), rotate(psi_star(), QUARTER)))
        self.assertEqual(law.atoms, ((-2, QUARTER), (0, HALF), (2, QUARTER)))

    def test_masses_must_sum_to_one(self):
        with self.assertRaises(ValueError):
            ValueDistribution(((0, HALF), (1, QUARTER)))

    def test_rescaled(self):
        law = distribution(psi_star()).rescaled(4)
        self.assertTrue(law.is_exact)
        self.assertEqual(law.exact_value(1), HALF)
        self.assertFalse(law.rescaled(2).is_exact)
        with self.assertRaises(ValueError):
            law.rescaled(2).exact_value(1)

    @given(step_functions())
    @settings(max_examples=60, deadline=None)
    def test_law_masses_sum_to_one(self, f):
        law = distribution(f)
        self.assertEqual(sum(law.masses), 1)
        self.assertEqual(sum(v * m for v, m in law.atoms), integrate(f))


class TestIO(unittest.TestCase):

    def test_json_round_trip(self):
        f = StepFunction.from_breakpoints([0, Fraction(1, 3)], [2, -1])
        self.assertEqual(from_json(to_json(f)), f)

    def test_json_accepts_strings(self):
        f = from_json({"breakpoints": ["0", "1/2"], "values": ["1", "-1"]})
        self.assertEqual(f, psi_star())

    def test_json_errors(self):
        with self.assertRaises(UsageError):
            from_json({"breakpoints": ["0"]})
        with self.assertRaises(UsageError):
            from_json({"breakpoints": ["1/2", "0"], "values": [1, 2]})

    def test_rows(self):
        self.assertEqual(rows(psi_star())[1][:2], ["1/2", "-1"])


if __name__ == "__main__":
    unittest.main()
