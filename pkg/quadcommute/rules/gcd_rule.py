"""Intersects two univariate constraints on the same variable."""

from quadcommute.branch import ConstraintStatus
from quadcommute.exactalg import rational_roots, univariate_gcd
from quadcommute.multfn import variable_name
from quadcommute.rules import Rule, RuleResult


@Rule.register('gcd')
class GcdRule(Rule):
    """Replaces a pair of univariate constraints by their gcd."""

    SCHEMA = {}

    def apply(self, branch):
        first = {}
        for c in branch.active():
            if not c.is_univariate:
                continue
            var = c.variables[0]
            if var not in first:
                first[var] = c
                continue
            keep = first[var]
            g = univariate_gcd(keep.polynomial, c.polynomial)
            c.status = ConstraintStatus.SATISFIED
            keep.kind = 'gcd'
            name = variable_name(var)
            if g.is_constant:
                branch.contradict(f"no common value of {name} for n={keep.origin.n} and n={c.origin.n}")
                return RuleResult(self.name, branch.reason, terminal=True)
            keep.polynomial = g
            keep.refresh(branch.caps)
            if g.degree(var) == 1:
                root = rational_roots(g)[0]
                branch.assign(var, root)
                return RuleResult(self.name, f"{name} = {root} from n={keep.origin.n}, n={c.origin.n}",
                                  terminal=branch.reason is not None)
            return RuleResult(self.name, f"{name}: {g.render()} = 0")
        return None
