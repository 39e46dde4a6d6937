"""Tests for constraint compilation, propagation and the branch search."""

import json
import unittest
import sys
import os
from fractions import Fraction

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from quadcommute.branch import Branch, BranchStatus, Caps, Constraint, DefinitionOrigin, normalize
from quadcommute.config import Config
from quadcommute.engine import (
    Match, branch_on, compile_constraints, match_leaf, propagate, search,
)
from quadcommute.families import Family, family_satisfies_constraints, known_families
from quadcommute.forms import BinaryQuadraticForm, FormError, MINUS_FORM, PLUS_FORM, Representation
from quadcommute.multfn import PartialMultiplicativeFunction
from quadcommute.stats import SearchStats


def leaf_families(report):
    return [leaf.families for leaf in report.leaves]


class TestCompileConstraints(unittest.TestCase):

    def test_single_constraint_at_three(self):
        fn = PartialMultiplicativeFunction(3)
        constraints = compile_constraints(PLUS_FORM, 3, fn)
        self.assertEqual(len(constraints), 1)
        self.assertEqual(constraints[0].polynomial, fn.ring.var(3) - 3)
        self.assertEqual(constraints[0].origin, Representation(3, 1, 1))

    def test_symmetric_representations_deduplicated(self):
        fn = PartialMultiplicativeFunction(7)
        constraints = compile_constraints(PLUS_FORM, 7, fn)
        self.assertEqual([c.origin.n for c in constraints], [3, 7])

    def test_empty_below_one(self):
        fn = PartialMultiplicativeFunction(3)
        self.assertEqual(compile_constraints(PLUS_FORM, 0, fn), [])

    def test_known_families_satisfy_compiled_constraints(self):
        fn = PartialMultiplicativeFunction(60)
        constraints = compile_constraints(MINUS_FORM, 60, fn)
        for spec in ('identity', 'const1', 'fp:2', 'fp:5', 'fp:11'):
            self.assertTrue(family_satisfies_constraints(Family.parse(spec), constraints), spec)
        for spec in ('fp:3', 'fp:7'):
            self.assertFalse(family_satisfies_constraints(Family.parse(spec), constraints), spec)

    def test_arguments_above_limit_skipped(self):
        form = BinaryQuadraticForm(1, -9, 21)
        fn = PartialMultiplicativeFunction(3)
        constraints = compile_constraints(form, 3, fn)
        self.assertEqual([c.origin for c in constraints], [Representation(3, 3, 1)])
        report = search(form, 3)
        self.assertEqual([leaf.id for leaf in report.leaves], ['root/f(3)=3', 'root/f(3)=7'])
        self.assertEqual(report.leaves[0].families, ['identity'])
        self.assertTrue(search(form, 20).leaves)

    def test_const1_fails_plus_form(self):
        fn = PartialMultiplicativeFunction(20)
        constraints = compile_constraints(PLUS_FORM, 20, fn)
        result = family_satisfies_constraints(Family.parse('const1'), constraints)
        self.assertFalse(result)
        self.assertEqual(result.witness, (3, 1, 1))
        self.assertTrue(family_satisfies_constraints(Family.parse('identity'), constraints))


class TestPropagation(unittest.TestCase):

    def test_definitions_leave_f2_free(self):
        report = search(PLUS_FORM, 13)
        self.assertEqual(len(report.leaves), 1)
        leaf = report.leaves[0]
        self.assertIs(leaf.status, BranchStatus.CONSISTENT)
        self.assertEqual(leaf.families, ['identity'])
        self.assertEqual(leaf.values['f(2)'], 'free')
        self.assertEqual(leaf.values['f(4)'], 'f(2)^2')
        self.assertEqual(leaf.values['f(7)'], 'f(2)^2 + f(2) + 1')
        self.assertEqual(leaf.values['f(13)'], 13)

    def test_propagate_records_rule_hits(self):
        fn = PartialMultiplicativeFunction(13)
        branch = Branch(fn, compile_constraints(PLUS_FORM, 13, fn))
        stats = SearchStats()
        propagate(branch, stats=stats)
        self.assertIs(branch.status, BranchStatus.CONSISTENT)
        self.assertGreater(stats.rule_hits['linear'], 0)

    def test_assigning_defined_value_adds_definition_constraint(self):
        fn = PartialMultiplicativeFunction(10)
        x = fn.ring.var(2)
        branch = Branch(fn, [])
        branch.define(7, x * x + x + 1)
        branch.assign(7, Fraction(7))
        constraint = branch.constraints[-1]
        self.assertEqual(constraint.origin, DefinitionOrigin(7))
        self.assertEqual(constraint.kind, 'definition')
        self.assertEqual(constraint.describe(), '[f(7) definition] f(2)^2 + f(2) - 6 = 0')
        result = family_satisfies_constraints(Family.parse('const1'), branch.constraints)
        self.assertEqual(result.witness, (7,))

    def test_search_needs_three(self):
        with self.assertRaises(FormError):
            search(PLUS_FORM, 2)


class TestBranchOn(unittest.TestCase):

    def make_branch(self, poly_builder):
        fn = PartialMultiplicativeFunction(10)
        x = fn.ring.var(2)
        constraint = Constraint(0, Representation(84, 2, 8), normalize(poly_builder(x)))
        return Branch(fn, [constraint]), constraint

    def test_children_in_root_order(self):
        branch, constraint = self.make_branch(lambda x: (x - 8) * (x + 10))
        children = branch_on(branch, constraint)
        self.assertEqual([c.id for c in children], ['root/f(2)=-10', 'root/f(2)=8'])
        self.assertEqual([c.path for c in children], [(0,), (1,)])
        self.assertEqual(children[1].determined()[2], 8)

    def test_irrational_cofactor_gives_stuck_child(self):
        branch, constraint = self.make_branch(lambda x: (x - 1) * (x * x - 2))
        children = branch_on(branch, constraint)
        self.assertEqual([c.id for c in children], ['root/f(2)=1', 'root/f(2)~irrational'])
        self.assertIs(children[1].status, BranchStatus.STUCK)
        self.assertEqual(children[1].unsatisfied()[0].polynomial.render(), 'f(2)^2 - 2')

    def test_rejects_linear_constraint(self):
        branch, constraint = self.make_branch(lambda x: x - 1)
        with self.assertRaises(ValueError):
            branch_on(branch, constraint)

    def test_match_leaf_needs_consistent_leaf(self):
        branch, _ = self.make_branch(lambda x: x * x - 2)
        with self.assertRaises(ValueError):
            match_leaf(branch, Family.parse('identity'))


class TestPlusFormSearch(unittest.TestCase):
    """x^2 + xy + y^2: only the identity survives once f(8) is pinned."""

    def test_n100_leaves_f8_open(self):
        report = search(PLUS_FORM, 100)
        self.assertFalse(report.incomplete)
        self.assertEqual(report.stuck(), [])
        self.assertEqual(len(report.consistent()), 2)
        self.assertEqual(sorted(leaf_families(report)), [[], ['identity']])
        odd = report.unexplained()[0]
        self.assertEqual(odd.values['f(8)'], -10)

    def test_n600_pins_bootstrap_values(self):
        report = search(PLUS_FORM, 600)
        leaf = next(leaf for leaf in report.consistent() if 'identity' in leaf.families)
        for q in (2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27):
            self.assertEqual(leaf.determined.get(q), q, q)

    def test_n130_identity_only(self):
        report = search(PLUS_FORM, 130)
        self.assertEqual(len(report.leaves), 1)
        leaf = report.leaves[0]
        self.assertEqual(leaf.families, ['identity'])
        for q in (2, 3, 4, 5, 7, 8, 9, 13):
            self.assertEqual(leaf.values[f"f({q})"], q)
        identity = Family.parse('identity')
        self.assertTrue(all(identity(q) == v for q, v in leaf.determined.items()))


class TestMinusFormSearch(unittest.TestCase):
    """x^2 - xy + y^2: identity, constant one and indicator families."""

    def test_n60(self):
        report = search(MINUS_FORM, 60)
        self.assertEqual(report.stuck(), [])
        self.assertEqual(len(report.consistent()), 5)
        families = [set(f) for f in leaf_families(report)]
        self.assertIn({'identity'}, families)
        self.assertIn({'fp:2'}, families)
        self.assertIn({'fp:5'}, families)
        self.assertTrue(any('const1' in f for f in families))
        unexplained = report.unexplained()
        self.assertEqual(len(unexplained), 1)
        self.assertEqual(unexplained[0].values['f(8)'], 0)

    def test_n100_adds_fp11(self):
        report = search(MINUS_FORM, 100)
        self.assertEqual(len(report.consistent()), 6)
        self.assertIn({'fp:11'}, [set(f) for f in leaf_families(report)])

    def test_n200_every_leaf_explained(self):
        report = search(MINUS_FORM, 200)
        self.assertEqual(report.stuck(), [])
        self.assertEqual(report.unexplained(), [])
        self.assertEqual(len(report.leaves), 5)
        named = set()
        for leaf in report.leaves:
            named.update(leaf.families)
        self.assertTrue({'identity', 'const1', 'fp:2', 'fp:5', 'fp:11'} <= named)
        for leaf in report.leaves:
            family = Family.parse(leaf.families[0])
            self.assertTrue(all(family(q) == v for q, v in leaf.determined.items()))

    def test_definitions_rule_out_indicator_families(self):
        self.assertNotIn('fp:3', search(MINUS_FORM, 3).leaves[0].families)
        report = search(MINUS_FORM, 20)
        leaf = next(leaf for leaf in report.leaves if leaf.id == 'root/f(2)=1')
        self.assertEqual(leaf.values['f(19)'], 'f(5)^2 - f(5) + 1')
        self.assertIn('const1', leaf.families)
        self.assertNotIn('fp:19', leaf.families)

    def test_thread_count_does_not_change_report(self):
        single = search(MINUS_FORM, 60, Config(threads=1)).to_json()
        pooled = search(MINUS_FORM, 60, Config(threads=4)).to_json()
        self.assertEqual(single, pooled)

    def test_branch_cap_marks_incomplete(self):
        report = search(MINUS_FORM, 60, Config(max_branches=2))
        self.assertTrue(report.incomplete)
        capped = search(MINUS_FORM, 60, Config(max_branches=2, threads=3))
        self.assertEqual(report.to_json(), capped.to_json())

    def test_json_round_trip(self):
        report = search(MINUS_FORM, 60)
        data = json.loads(report.to_json())
        self.assertEqual(data, report.to_dict())
        self.assertEqual(data['form'], '1,-1,1')
        self.assertEqual(data['contradictions'], report.contradictions)
        self.assertTrue(all('pending' not in leaf for leaf in data['leaves']))

    def test_leaves_sorted_by_path(self):
        report = search(MINUS_FORM, 60)
        paths = [leaf.path for leaf in report.leaves]
        self.assertEqual(paths, sorted(paths))


class TestFamilies(unittest.TestCase):

    def test_known_families(self):
        names = [f.name for f in known_families(12)]
        self.assertEqual(names, ['identity', 'const1', 'fp:2', 'fp:3', 'fp:5', 'fp:7', 'fp:11'])

    def test_match_leaf(self):
        report = search(PLUS_FORM, 13)
        self.assertEqual(report.leaves[0].families, ['identity'])
        fn = PartialMultiplicativeFunction(3)
        branch = Branch(fn, compile_constraints(PLUS_FORM, 3, fn), Caps())
        propagate(branch)
        self.assertIs(match_leaf(branch, Family.parse('identity')), Match.CONSISTENT)
        self.assertIs(match_leaf(branch, Family.parse('const1')), Match.INCONSISTENT)
        self.assertIs(match_leaf(branch, Family.parse('const1'), constrained=[2]), Match.CONSISTENT)

    def test_listed_families_satisfy_compiled_constraints(self):
        for form in (PLUS_FORM, MINUS_FORM):
            for limit in range(3, 41):
                fn = PartialMultiplicativeFunction(limit)
                constraints = compile_constraints(form, limit, fn)
                for leaf in search(form, limit).leaves:
                    for name in leaf.families:
                        self.assertTrue(family_satisfies_constraints(Family.parse(name), constraints),
                                        (form.spec(), limit, leaf.id, name))


if __name__ == '__main__':
    unittest.main()
