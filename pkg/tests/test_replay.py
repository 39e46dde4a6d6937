"""Tests for the step-by-step derivation replays."""

import unittest
import sys
import os

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from quadcommute.engine import search
from quadcommute.families import PrimeIndicator
from quadcommute.forms import PLUS_FORM
from quadcommute.replay import (
    CASE_COLUMNS, THEOREM1_STEPS, Equation, Mult, Rep, ReplayEvaluator, ReplayFailure,
    ReplayStep, StepKind, product_rule, replay_f2_pattern, replay_identity_chain,
    replay_theorem1, replay_theorem2_cases, star_identity,
)


class TestPlusFormBootstrap(unittest.TestCase):

    def test_every_step_forced(self):
        replay = replay_theorem1()
        self.assertEqual(len(replay.steps), len(THEOREM1_STEPS))
        self.assertEqual(replay.values, [(n, n) for n in range(1, 29)])

    def test_f2_step_uses_elimination(self):
        replay = replay_theorem1()
        conclusions = [s.conclusion for s in replay.steps]
        self.assertIn('f(2) = 2', conclusions)
        self.assertIn('f(7) = f(2)^2 + f(2) + 1', conclusions)
        self.assertIn('f(23) = 23', conclusions)

    def test_wrong_representation_rejected(self):
        evaluator = ReplayEvaluator(PLUS_FORM, [2, 3, 7])
        step = ReplayStep("bad", StepKind.SOLVE, 3, (Equation(3, Mult(3), Rep(1, 2)),))
        with self.assertRaises(ReplayFailure) as cm:
            evaluator.run(step)
        self.assertEqual(cm.exception.step, "bad")

    def test_unforced_step_rejected(self):
        evaluator = ReplayEvaluator(PLUS_FORM, [2, 3, 7])
        step = ReplayStep("underdetermined", StepKind.SOLVE, 2, (product_rule(7, 1, 2),))
        with self.assertRaises(ReplayFailure):
            evaluator.run(step)

    def test_agrees_with_engine_leaf(self):
        values = dict(replay_theorem1().values)
        leaf = search(PLUS_FORM, 130).leaves[0]
        common = [q for q in leaf.determined if q in values]
        self.assertIn(2, common)
        for q in common:
            self.assertEqual(leaf.determined[q], values[q])


class TestMinusFormCases(unittest.TestCase):

    def test_case_table(self):
        rows = replay_theorem2_cases()
        self.assertEqual([list(row) for row in rows], [list(CASE_COLUMNS)] * 3)
        self.assertEqual([[row[n] for n in CASE_COLUMNS] for row in rows], [
            [0, 1, 0, 0, 1],
            [1, 1, 1, 1, 1],
            [2, 3, 4, 6, 7],
        ])

    def test_star_identity(self):
        self.assertTrue(star_identity())

    def test_f2_zero_gives_indicator(self):
        table = replay_f2_pattern(100)
        self.assertEqual(len(table), 100)
        indicator = PrimeIndicator(2)
        self.assertTrue(all(indicator(n) == v for n, v in table))

    def test_f2_two_gives_identity(self):
        self.assertEqual(replay_identity_chain(50), [(n, n) for n in range(1, 51)])


if __name__ == '__main__':
    unittest.main()
