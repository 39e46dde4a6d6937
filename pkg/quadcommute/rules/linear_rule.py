"""Solves or eliminates a variable appearing linearly."""

from quadcommute.branch import ConstraintStatus
from quadcommute.multfn import variable_name
from quadcommute.rules import Rule, RuleResult


@Rule.register('linear')
class LinearRule(Rule):
    """Constraint linear in v with a nonzero constant coefficient.

    When the rest is constant v is assigned, otherwise v becomes a
    substitution definition. The largest eligible prime power is chosen.
    """

    SCHEMA = {
        'definitions': {'type': bool, 'default': True,
                        'help': 'eliminate v by an expression when the rest is not constant'},
    }

    def apply(self, branch):
        allow_definitions = self.option('definitions')
        for c in branch.active():
            poly = c.polynomial
            if poly.is_constant:
                continue
            candidates = []
            for v in poly.variables:
                if poly.degree(v) != 1:
                    continue
                coeff = poly.coefficient(v, 1)
                if coeff.is_constant:
                    candidates.append((v, coeff.constant_value))
            if not candidates:
                continue
            v, coeff = max(candidates)
            expr = -(poly - coeff * poly.ring.var(v)) / coeff
            if not expr.is_constant and not allow_definitions:
                continue
            c.status = ConstraintStatus.SATISFIED
            if expr.is_constant:
                branch.assign(v, expr.constant_value)
                detail = f"{variable_name(v)} = {expr.render()} from n={c.origin.n}"
            else:
                branch.define(v, expr)
                detail = f"{variable_name(v)} := {expr.render()} from n={c.origin.n}"
            return RuleResult(self.name, detail, terminal=branch.reason is not None)
        return None
