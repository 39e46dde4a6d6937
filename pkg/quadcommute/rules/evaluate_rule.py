"""Checks constraints whose variables are all determined."""

from quadcommute.branch import ConstraintStatus
from quadcommute.exactalg import format_rational
from quadcommute.rules import Rule, RuleResult


@Rule.register('evaluate')
class EvaluateRule(Rule):
    """A constant constraint is either satisfied (0) or a contradiction."""

    SCHEMA = {}

    def apply(self, branch):
        for c in branch.active():
            if not c.polynomial.is_constant:
                continue
            value = c.polynomial.constant_value
            if value == 0:
                c.status = ConstraintStatus.SATISFIED
                return RuleResult(self.name, f"n={c.origin.n} holds")
            branch.contradict(f"n={c.origin.n} reduces to {format_rational(value)} = 0")
            return RuleResult(self.name, branch.reason, terminal=True)
        return None
