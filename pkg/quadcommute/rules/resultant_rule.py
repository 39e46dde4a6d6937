"""Eliminates a variable between two constraints in the same two variables."""

from itertools import combinations

from quadcommute.exactalg import Deferred, resultant_eliminate
from quadcommute.multfn import variable_name
from quadcommute.rules import Rule, RuleResult


@Rule.register('resultant')
class ResultantRule(Rule):
    """Fires only while neither variable has univariate information."""

    SCHEMA = {
        'max_degree': {'type': int, 'default': 4,
                       'help': 'largest degree of the eliminated variable'},
    }

    def apply(self, branch):
        max_degree = self.option('max_degree')
        known = branch.univariate_variables()
        groups = {}
        for c in branch.active():
            if len(c.variables) == 2:
                groups.setdefault(c.variables, []).append(c)
        for (u, w), members in groups.items():
            if u in known or w in known:
                continue
            for a, b in combinations(members, 2):
                key = (a.uid, b.uid)
                if key in branch.tried_pairs:
                    continue
                branch.tried_pairs.add(key)
                if max(a.polynomial.degree(w), b.polynomial.degree(w)) > max_degree:
                    continue
                try:
                    res = resultant_eliminate(a.polynomial, b.polynomial, w, cap=branch.caps.degree_cap)
                except Deferred:
                    continue
                if res.is_zero:
                    continue
                if res.is_constant:
                    branch.contradict(f"n={a.origin.n} and n={b.origin.n} share no solution")
                    return RuleResult(self.name, branch.reason, terminal=True)
                branch.add_constraint(res, a.origin, 'resultant')
                return RuleResult(self.name, f"eliminated {variable_name(w)} from n={a.origin.n}, n={b.origin.n}")
        return None
