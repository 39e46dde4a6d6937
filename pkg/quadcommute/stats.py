"""Statistics collection for searches."""

import threading
import time
from collections import defaultdict, deque


class SearchStats:
    """Collect rule and branch statistics. Never part of a report."""

    def __init__(self, max_events=1000):
        self.rule_hits = defaultdict(int)
        self.terminations = defaultdict(int)
        self.branches = 1
        self.searches = 0
        self.elapsed = []
        self.events = deque(maxlen=max_events)
        self.start_time = time.time()
        self.event_id_counter = 0
        self._lock = threading.Lock()

    def record_rule(self, rule_name, branch_id, detail=''):
        """Record one rule firing."""
        with self._lock:
            self.rule_hits[rule_name] += 1
            self.event_id_counter += 1
            self.events.append({
                'id': self.event_id_counter,
                'branch': branch_id,
                'rule': rule_name,
                'detail': detail[:200],
            })

    def record_termination(self, status):
        with self._lock:
            self.terminations[status] += 1

    def record_branches(self, count):
        with self._lock:
            self.branches += count

    def record_search(self, seconds):
        with self._lock:
            self.searches += 1
            self.elapsed.append(seconds)

    def avg_elapsed(self):
        """Average search time in seconds."""
        if not self.elapsed:
            return 0
        return sum(self.elapsed) / len(self.elapsed)

    def to_dict(self):
        """Convert stats to dictionary."""
        total = sum(self.rule_hits.values()) or 1
        return {
            'searches': self.searches,
            'branches': self.branches,
            'rule_hits': dict(sorted(self.rule_hits.items())),
            'terminations': dict(sorted(self.terminations.items())),
            'avg_elapsed': round(self.avg_elapsed(), 3),
            'uptime': round(time.time() - self.start_time, 0),
            'distribution': {
                name: round(100 * hits / total, 1) for name, hits in sorted(self.rule_hits.items())
            }
        }

    def get_recent_events(self, limit=50):
        """Get recent rule firings."""
        return list(self.events)[-limit:]
