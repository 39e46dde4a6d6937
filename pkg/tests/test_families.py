"""Tests for solution families and the exhaustive checks."""

import unittest
import sys
import os
from fractions import Fraction

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from quadcommute.families import (
    ConstantOne, Family, FamilySpecError, Identity, PrimeIndicator,
    admissible_indicator_primes, multiplicativity_check, square_law_check,
    star_condition_check, verify_family, zero_ideal_check,
)
from quadcommute.forms import MINUS_FORM, PLUS_FORM


class TestFamilyParsing(unittest.TestCase):

    def test_parse(self):
        self.assertEqual(Family.parse('identity'), Identity())
        self.assertEqual(Family.parse('const1'), ConstantOne())
        self.assertEqual(Family.parse('fp:7').name, 'fp:7')

    def test_bad_specs(self):
        for spec in ('fp:9', 'fp:x', 'fp:', 'zero', 'identity:2'):
            with self.assertRaises(FamilySpecError):
                Family.parse(spec)

    def test_values(self):
        fp3 = PrimeIndicator(3)
        self.assertEqual([fp3(n) for n in range(1, 7)], [1, 1, 0, 1, 1, 0])
        self.assertEqual(Identity()(12), Fraction(12))
        self.assertEqual(PrimeIndicator(5)(10), 0)
        self.assertEqual(PrimeIndicator(5)(21), 1)
        with self.assertRaises(ValueError):
            Identity()(0)


class TestVerifyFamily(unittest.TestCase):

    def test_identity_commutes_with_both_forms(self):
        self.assertTrue(verify_family(Identity(), PLUS_FORM, 100))
        self.assertTrue(verify_family(Identity(), MINUS_FORM, 100))

    def test_const1(self):
        self.assertTrue(verify_family(ConstantOne(), MINUS_FORM, 100))
        result = verify_family(ConstantOne(), PLUS_FORM, 100)
        self.assertFalse(result)
        self.assertEqual(result.witness, (1, 1))

    def test_inert_indicators(self):
        for p in (2, 5, 11):
            self.assertTrue(verify_family(PrimeIndicator(p), MINUS_FORM, 100), p)

    def test_split_indicator_fails_first_lexicographic(self):
        result = verify_family(PrimeIndicator(7), MINUS_FORM, 10)
        self.assertFalse(result)
        self.assertEqual(result.witness, (1, 3))
        self.assertEqual(result.to_dict()['witness'], [1, 3])

    def test_indicator_of_three_fails_minus_form(self):
        self.assertEqual(verify_family(PrimeIndicator(3), MINUS_FORM, 2).witness, (1, 2))

    def test_admissible_primes(self):
        self.assertEqual(admissible_indicator_primes(MINUS_FORM, 30, 60), [2, 5, 11, 17, 23, 29])
        self.assertEqual(admissible_indicator_primes(PLUS_FORM, 30, 60), [])

    def test_bound_must_be_positive(self):
        with self.assertRaises(ValueError):
            verify_family(Identity(), PLUS_FORM, 0)


class TestChecks(unittest.TestCase):

    def test_multiplicativity(self):
        self.assertTrue(multiplicativity_check(PrimeIndicator(5), 50))
        self.assertTrue(multiplicativity_check(Identity(), 50))
        shifted = multiplicativity_check(lambda n: n + 1, 10)
        self.assertFalse(shifted)
        self.assertEqual(shifted.witness, (2, 3))

    def test_star_condition(self):
        for family in (Identity(), ConstantOne(), PrimeIndicator(2)):
            self.assertTrue(star_condition_check(family, 100))
        result = star_condition_check(lambda n: Fraction(2), 100)
        self.assertFalse(result)
        self.assertEqual(result.witness, (2,))

    def test_square_law(self):
        self.assertTrue(square_law_check(PrimeIndicator(11), 50))
        self.assertFalse(square_law_check(lambda n: 2 * n, 5))

    def test_zero_ideal(self):
        self.assertTrue(zero_ideal_check(PrimeIndicator(5), 100))
        broken = zero_ideal_check(lambda n: 0 if n == 5 else 1, 20)
        self.assertEqual(broken.witness, (5, 10))


if __name__ == '__main__':
    unittest.main()
