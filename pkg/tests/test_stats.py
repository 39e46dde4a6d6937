"""Tests for SearchStats."""

import os
import sys
import unittest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from quadcommute.engine import search
from quadcommute.forms import MINUS_FORM
from quadcommute.stats import SearchStats


class TestSearchStats(unittest.TestCase):
    """Test SearchStats functionality."""

    def setUp(self):
        self.stats = SearchStats(max_events=3)

    def test_record_rule_adds_event_with_id(self):
        self.stats.record_rule('linear', 'root', 'f(3) = 3 from n=3')
        self.assertEqual(self.stats.rule_hits['linear'], 1)
        self.assertEqual(self.stats.events[0]['id'], 1)
        self.assertEqual(self.stats.events[0]['branch'], 'root')

    def test_events_bounded(self):
        for i in range(5):
            self.stats.record_rule('gcd', f"b{i}")
        recent = self.stats.get_recent_events()
        self.assertEqual([e['id'] for e in recent], [3, 4, 5])
        self.assertEqual(self.stats.rule_hits['gcd'], 5)

    def test_to_dict(self):
        self.stats.record_rule('evaluate', 'root')
        self.stats.record_rule('linear', 'root')
        self.stats.record_rule('linear', 'root')
        self.stats.record_termination('consistent')
        self.stats.record_branches(3)
        self.stats.record_search(1.0)
        data = self.stats.to_dict()
        self.assertEqual(data['rule_hits'], {'evaluate': 1, 'linear': 2})
        self.assertEqual(data['distribution'], {'evaluate': 33.3, 'linear': 66.7})
        self.assertEqual(data['branches'], 4)
        self.assertEqual(data['terminations'], {'consistent': 1})
        self.assertEqual(data['avg_elapsed'], 1.0)

    def test_avg_elapsed_empty(self):
        self.assertEqual(self.stats.avg_elapsed(), 0)

    def test_search_fills_stats(self):
        stats = SearchStats()
        report = search(MINUS_FORM, 60, stats=stats)
        self.assertEqual(stats.searches, 1)
        self.assertEqual(stats.terminations['consistent'], len(report.consistent()))
        self.assertEqual(stats.terminations.get('contradiction', 0), report.contradictions)
        self.assertGreater(stats.branches, 1)


if __name__ == '__main__':
    unittest.main()
