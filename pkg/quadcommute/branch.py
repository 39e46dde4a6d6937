"""Constraints and search branches."""

import logging
from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Set, Tuple, Union

from quadcommute.exactalg import Polynomial, format_rational, substitute
from quadcommute.forms import Representation
from quadcommute.multfn import AssignResult, PartialMultiplicativeFunction, variable_name

logger = logging.getLogger(__name__)


class ConstraintStatus(str, Enum):
    ACTIVE = 'active'
    SATISFIED = 'satisfied'
    DEFERRED = 'deferred'


class BranchStatus(str, Enum):
    OPEN = 'open'
    CONSISTENT = 'consistent'
    CONTRADICTION = 'contradiction'
    STUCK = 'stuck'


@dataclass(frozen=True)
class Caps:
    degree_cap: int = 16
    variable_cap: int = 3

    @classmethod
    def from_config(cls, config) -> 'Caps':
        return cls(degree_cap=config.degree_cap, variable_cap=config.variable_cap)


@dataclass(frozen=True)
class DefinitionOrigin:
    """Origin of the constraint left behind when a defined f(q) gets a value."""
    n: int


Origin = Union[Representation, DefinitionOrigin]


def normalize(poly: Polynomial) -> Polynomial:
    return poly if poly.is_zero else poly.monic()


@dataclass
class Constraint:
    """value_at(n) - Q(value_at(x), value_at(y)) = 0, kept monic."""
    uid: int
    origin: Origin
    polynomial: Polynomial
    status: ConstraintStatus = ConstraintStatus.ACTIVE
    kind: str = 'representation'

    @property
    def variables(self):
        return self.polynomial.variables

    @property
    def is_univariate(self) -> bool:
        return len(self.polynomial.variables) == 1

    def refresh(self, caps: Caps):
        if self.status is ConstraintStatus.SATISFIED:
            return
        poly = self.polynomial
        if poly.max_degree > caps.degree_cap or len(poly.variables) > caps.variable_cap:
            self.status = ConstraintStatus.DEFERRED
        else:
            self.status = ConstraintStatus.ACTIVE

    def describe(self) -> str:
        o = self.origin
        if isinstance(o, DefinitionOrigin):
            return f"[{variable_name(o.n)} definition] {self.polynomial.render()} = 0"
        return f"[{o.n}=Q({o.x},{o.y})] {self.polynomial.render()} = 0"


class Branch:
    """One node of the search tree; owns its function state and constraints."""

    def __init__(self, fn_state: PartialMultiplicativeFunction, constraints: List[Constraint],
                 caps: Caps = Caps(), id: str = 'root', path: Tuple[int, ...] = (), depth: int = 0):
        self.fn_state = fn_state
        self.constraints = constraints
        self.caps = caps
        self.id = id
        self.path = path
        self.depth = depth
        self.status = BranchStatus.OPEN
        self.definitions: Dict[int, Polynomial] = {}
        self.tried_pairs: Set[Tuple[int, int]] = set()
        self.reason: Optional[str] = None
        self._next_uid = max((c.uid for c in constraints), default=-1) + 1
        for c in constraints:
            c.refresh(caps)

    def fork(self, label: str, index: int) -> 'Branch':
        child = Branch.__new__(Branch)
        child.fn_state = self.fn_state.clone()
        child.constraints = [replace(c) for c in self.constraints]
        child.caps = self.caps
        child.id = f"{self.id}/{label}"
        child.path = self.path + (index,)
        child.depth = self.depth + 1
        child.status = BranchStatus.OPEN
        child.definitions = dict(self.definitions)
        child.tried_pairs = set(self.tried_pairs)
        child.reason = None
        child._next_uid = self._next_uid
        return child

    # queries ------------------------------------------------------------

    def active(self) -> List[Constraint]:
        return [c for c in self.constraints if c.status is ConstraintStatus.ACTIVE]

    def unsatisfied(self) -> List[Constraint]:
        return [c for c in self.constraints if c.status is not ConstraintStatus.SATISFIED]

    def univariate_variables(self) -> Set[int]:
        return {c.variables[0] for c in self.active() if c.is_univariate}

    def branch_candidate(self) -> Optional[Constraint]:
        """Lowest-degree univariate constraint of degree >= 2; ties by origin n."""
        candidates = [c for c in self.active()
                      if c.is_univariate and c.polynomial.degree(c.variables[0]) >= 2]
        if not candidates:
            return None
        return min(candidates, key=lambda c: (c.polynomial.degree(c.variables[0]), c.origin.n, c.uid))

    # mutation -----------------------------------------------------------

    def contradict(self, reason: str):
        self.status = BranchStatus.CONTRADICTION
        self.reason = reason
        logger.debug("%s: contradiction, %s", self.id, reason)

    def add_constraint(self, polynomial: Polynomial, origin: Origin, kind: str) -> Constraint:
        constraint = Constraint(self._next_uid, origin, normalize(polynomial), kind=kind)
        self._next_uid += 1
        constraint.refresh(self.caps)
        self.constraints.append(constraint)
        return constraint

    def _rewrite(self, var: int, value):
        for c in self.constraints:
            if c.status is not ConstraintStatus.SATISFIED and var in c.polynomial.variables:
                c.polynomial = normalize(substitute(c.polynomial, var, value, cap=None))
                c.refresh(self.caps)
        resolved = []
        for q, expr in self.definitions.items():
            if var in expr.variables:
                expr = substitute(expr, var, value, cap=None)
                self.definitions[q] = expr
                if expr.is_constant:
                    resolved.append(q)
        for q in resolved:
            self.fn_state.assign(q, self.definitions.pop(q).constant_value)

    def assign(self, var: int, value: Fraction) -> bool:
        if var in self.definitions:
            expr = self.definitions.pop(var)
            self.add_constraint(expr - value, DefinitionOrigin(var), 'definition')
        if self.fn_state.assign(var, value) is AssignResult.CONTRADICTION:
            self.contradict(f"{variable_name(var)} cannot be {format_rational(value)}")
            return False
        logger.debug("%s: %s = %s", self.id, variable_name(var), format_rational(value))
        self._rewrite(var, value)
        return True

    def define(self, var: int, expr: Polynomial):
        """Eliminate var everywhere by the expression it equals."""
        if expr.is_constant:
            self.assign(var, expr.constant_value)
            return
        self.definitions[var] = expr
        logger.debug("%s: %s := %s", self.id, variable_name(var), expr.render())
        self._rewrite(var, expr)

    # reporting ----------------------------------------------------------

    def settle(self) -> BranchStatus:
        """Final status once no rule fires."""
        if self.status in (BranchStatus.CONTRADICTION, BranchStatus.STUCK):
            return self.status
        if not self.unsatisfied():
            self.status = BranchStatus.CONSISTENT
        elif self.branch_candidate() is not None:
            self.status = BranchStatus.OPEN
        else:
            self.status = BranchStatus.STUCK
        return self.status

    def determined(self) -> Dict[int, Fraction]:
        return self.fn_state.determined()

    def __repr__(self) -> str:
        return f"Branch({self.id}, {self.status.value})"
