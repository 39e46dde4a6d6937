"""Partial multiplicative functions on {1..N}.

Values are stored only at prime powers; everything else is derived. An
undetermined prime power is a polynomial variable named ``f(q)``.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union

from sympy import factorint, primerange

from quadcommute.exactalg import (
    DEFAULT_DEGREE_CAP, Number, Polynomial, PolynomialRing, format_rational, to_rational,
)

logger = logging.getLogger(__name__)


class NotPrimePowerError(ValueError):
    """Raised when a value is assigned at something other than a prime power <= N."""


def factorize(n: int) -> List[Tuple[int, int]]:
    """Prime factorization with primes ascending; [] for 1."""
    if n < 1:
        raise ValueError(f"cannot factorize {n}")
    return sorted(factorint(n).items())


def prime_power_parts(n: int) -> List[int]:
    """The prime-power components of n, e.g. 12 -> [4, 3]."""
    return [p ** k for p, k in factorize(n)]


def is_prime_power(n: int) -> bool:
    return n > 1 and len(factorint(n)) == 1


@lru_cache(maxsize=None)
def prime_powers_upto(limit: int) -> Tuple[int, ...]:
    """Prime powers <= limit ordered by (prime, exponent)."""
    powers = []
    for p in primerange(2, limit + 1):
        q = p
        while q <= limit:
            powers.append(q)
            q *= p
    return tuple(powers)


def variable_name(q: int) -> str:
    return f"f({q})"


@lru_cache(maxsize=None)
def ring_for_limit(limit: int, degree_cap: int = DEFAULT_DEGREE_CAP) -> PolynomialRing:
    """Shared polynomial ring whose variables are the prime powers <= limit."""
    qs = prime_powers_upto(limit)
    return PolynomialRing(qs, [variable_name(q) for q in qs], degree_cap=degree_cap)


class AssignResult(Enum):
    OK = 'ok'
    CONTRADICTION = 'contradiction'


@dataclass(frozen=True)
class Determined:
    value: Fraction


@dataclass(frozen=True)
class Variable:
    id: int


ValueState = Union[Determined, Variable]


class PartialMultiplicativeFunction:
    """Values at prime powers <= limit; f(1) = 1 by convention."""

    def __init__(self, limit: int, ring: Optional[PolynomialRing] = None):
        if limit < 1:
            raise ValueError(f"limit must be positive, got {limit}")
        self.limit = limit
        self.ring = ring or ring_for_limit(limit)
        self._states: Dict[int, ValueState] = {q: Variable(q) for q in prime_powers_upto(limit)}

    def _check(self, q: int):
        if q not in self._states:
            raise NotPrimePowerError(f"{q} is not a prime power <= {self.limit}")

    def state(self, q: int) -> ValueState:
        self._check(q)
        return self._states[q]

    def is_determined(self, q: int) -> bool:
        return isinstance(self.state(q), Determined)

    def assign(self, q: int, value: Number) -> AssignResult:
        self._check(q)
        value = to_rational(value)
        current = self._states[q]
        if isinstance(current, Determined):
            if current.value == value:
                return AssignResult.OK
            logger.debug("f(%d) already %s, refusing %s", q, current.value, value)
            return AssignResult.CONTRADICTION
        self._states[q] = Determined(value)
        return AssignResult.OK

    def value_at(self, n: int) -> Polynomial:
        """f(n) as a constant times a monomial in the undetermined prime powers."""
        if not 1 <= n <= self.limit:
            raise ValueError(f"{n} outside 1..{self.limit}")
        constant = Fraction(1)
        powers = {}
        for q in prime_power_parts(n):
            state = self._states[q]
            if isinstance(state, Determined):
                constant *= state.value
            else:
                powers[q] = 1
        return self.ring.monomial(powers, constant) if constant else self.ring.zero

    def determined(self) -> Dict[int, Fraction]:
        return {q: s.value for q, s in self._states.items() if isinstance(s, Determined)}

    def free(self) -> List[int]:
        return sorted(q for q, s in self._states.items() if isinstance(s, Variable))

    def clone(self) -> 'PartialMultiplicativeFunction':
        copy = PartialMultiplicativeFunction.__new__(PartialMultiplicativeFunction)
        copy.limit = self.limit
        copy.ring = self.ring
        copy._states = dict(self._states)
        return copy

    def to_report(self, definitions: Optional[Mapping[int, Polynomial]] = None) -> Dict[str, Union[int, str]]:
        """{"f(q)": value | "free" | defining expression}, prime powers ascending."""
        definitions = definitions or {}
        report = {}
        for q in sorted(self._states):
            state = self._states[q]
            if isinstance(state, Determined):
                value = state.value
                report[variable_name(q)] = int(value) if value.denominator == 1 else format_rational(value)
            elif q in definitions:
                report[variable_name(q)] = definitions[q].render()
            else:
                report[variable_name(q)] = 'free'
        return report


def constrained_variables(constraints: Iterable) -> List[int]:
    """Prime powers appearing in at least one compiled constraint, ascending.

    ``constraints`` are engine constraints (anything with a ``polynomial``).
    """
    found = set()
    for constraint in constraints:
        found.update(constraint.polynomial.variables)
    return sorted(found)
