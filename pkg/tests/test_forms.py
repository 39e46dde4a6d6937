"""Unit tests for quadratic forms and representation tables."""

import random
import unittest
import sys
import os

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from quadcommute.forms import (
    BinaryQuadraticForm, FormError, MINUS_FORM, PLUS_FORM, Representation,
    discriminant, is_positive_definite, parse_form, representation_table, representations,
)


class TestBinaryQuadraticForm(unittest.TestCase):

    def test_discriminant(self):
        self.assertEqual(discriminant(PLUS_FORM), -3)
        self.assertEqual(MINUS_FORM.discriminant, -3)
        self.assertEqual(BinaryQuadraticForm(1, 0, 1).discriminant, -4)

    def test_is_positive_definite(self):
        self.assertTrue(is_positive_definite(PLUS_FORM))
        self.assertTrue(is_positive_definite(MINUS_FORM))
        indefinite = BinaryQuadraticForm(1, 3, 1)
        self.assertEqual(indefinite.discriminant, 5)
        self.assertFalse(is_positive_definite(indefinite))
        self.assertFalse(is_positive_definite(BinaryQuadraticForm(-1, 0, -1)))
        self.assertFalse(is_positive_definite(BinaryQuadraticForm(1, 2, 1)))  # degenerate

    def test_enumeration_rejects_indefinite_forms(self):
        for form in (BinaryQuadraticForm(1, 3, 1), BinaryQuadraticForm(-1, 0, -1), BinaryQuadraticForm(1, 2, 1)):
            with self.assertRaises(FormError):
                representations(form, 5)
            with self.assertRaises(FormError):
                representation_table(form, 5)
        with self.assertRaises(FormError):
            parse_form("1,3,1")

    def test_evaluate(self):
        self.assertEqual(PLUS_FORM.evaluate(1, 2), 7)
        self.assertEqual(MINUS_FORM.evaluate(3, 1), 7)

    def test_parse_form(self):
        self.assertEqual(parse_form("1,-1,1"), MINUS_FORM)
        self.assertEqual(parse_form(" 1, 1, 1 "), PLUS_FORM)
        self.assertEqual(parse_form("2,1,3").spec(), "2,1,3")
        for bad in ("1,1", "a,b,c", "1,1,1,1", ""):
            with self.assertRaises(FormError):
                parse_form(bad)


class TestRepresentations(unittest.TestCase):

    def test_minus_form_seven(self):
        reps = representations(MINUS_FORM, 7)
        self.assertEqual([(r.x, r.y) for r in reps], [(1, 3), (2, 3), (3, 1), (3, 2)])
        self.assertTrue(all(isinstance(r, Representation) and r.n == 7 for r in reps))

    def test_plus_form_seven(self):
        self.assertEqual([(r.x, r.y) for r in representations(PLUS_FORM, 7)], [(1, 2), (2, 1)])

    def test_unrepresented(self):
        self.assertEqual(representations(PLUS_FORM, 2), [])
        self.assertEqual(representations(MINUS_FORM, 5), [])

    def test_rejects_non_positive_n(self):
        with self.assertRaises(FormError):
            representations(PLUS_FORM, 0)
        with self.assertRaises(FormError):
            representation_table(PLUS_FORM, 0)

    def test_table_only_represented_and_sorted(self):
        table = representation_table(PLUS_FORM, 30)
        self.assertEqual(list(table), sorted(table))
        self.assertEqual(list(table)[:4], [3, 7, 12, 13])
        for n, reps in table.items():
            self.assertEqual(list(reps), representations(PLUS_FORM, n))

    def test_table_is_read_only(self):
        table = representation_table(MINUS_FORM, 10)
        with self.assertRaises(TypeError):
            table[2] = ()

    def test_completeness_against_brute_force(self):
        rng = random.Random(20240)
        for _ in range(8):
            while True:
                a, b, c = rng.randint(1, 4), rng.randint(-4, 4), rng.randint(1, 4)
                if b * b - 4 * a * c < 0:
                    break
            form = BinaryQuadraticForm(a, b, c)
            brute = {}
            for x in range(1, 201):
                for y in range(1, 201):
                    n = form.evaluate(x, y)
                    if n <= 200:
                        brute.setdefault(n, []).append((x, y))
            table = representation_table(form, 200)
            self.assertEqual({n: [(r.x, r.y) for r in reps] for n, reps in table.items()}, brute)

    def test_symmetry_when_a_equals_c(self):
        for form in (PLUS_FORM, MINUS_FORM, BinaryQuadraticForm(2, 1, 2)):
            for n, reps in representation_table(form, 150).items():
                pairs = {(r.x, r.y) for r in reps}
                self.assertEqual(pairs, {(y, x) for x, y in pairs})


if __name__ == '__main__':
    unittest.main()
