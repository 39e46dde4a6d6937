"""Arithmetic in Z[w], w = (-1 + sqrt(-3))/2.

Norms, prime splitting and the divisibility lemma for inert primes, checked
by bounded search. x^2 - xy + y^2 is the norm of x + yw.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from math import isqrt
from typing import List, Optional, Tuple

from sympy import isprime, primerange

from quadcommute.families import CheckResult, PASS
from quadcommute.forms import MINUS_FORM, representations

logger = logging.getLogger(__name__)


class EisensteinError(ValueError):
    """Bad input to a Z[w] query, such as a composite where a prime is needed."""


@dataclass(frozen=True, order=True)
class EisensteinInteger:
    """u + v*w."""
    u: int
    v: int

    @property
    def norm(self) -> int:
        return self.u * self.u - self.u * self.v + self.v * self.v

    def conjugate(self) -> 'EisensteinInteger':
        # conj(w) = -1 - w
        return EisensteinInteger(self.u - self.v, -self.v)

    def __add__(self, other: 'EisensteinInteger') -> 'EisensteinInteger':
        return EisensteinInteger(self.u + other.u, self.v + other.v)

    def __sub__(self, other: 'EisensteinInteger') -> 'EisensteinInteger':
        return EisensteinInteger(self.u - other.u, self.v - other.v)

    def __neg__(self) -> 'EisensteinInteger':
        return EisensteinInteger(-self.u, -self.v)

    def __mul__(self, other: 'EisensteinInteger') -> 'EisensteinInteger':
        # w^2 = -w - 1
        a, b, c, d = self.u, self.v, other.u, other.v
        return EisensteinInteger(a * c - b * d, a * d + b * c - b * d)

    def is_unit(self) -> bool:
        return self.norm == 1

    def __str__(self) -> str:
        if self.v == 0:
            return str(self.u)
        v = {1: '', -1: '-'}.get(self.v, str(self.v))
        if self.u == 0:
            return f"{v}ω"
        sign = '-' if self.v < 0 else '+'
        return f"{self.u}{sign}{v.lstrip('-')}ω"


def norm(z: EisensteinInteger) -> int:
    return z.norm


def mul(z: EisensteinInteger, w: EisensteinInteger) -> EisensteinInteger:
    return z * w


def conj(z: EisensteinInteger) -> EisensteinInteger:
    return z.conjugate()


def units() -> List[EisensteinInteger]:
    """The six elements of norm 1."""
    return [z for z in (EisensteinInteger(u, v) for u in (-1, 0, 1) for v in (-1, 0, 1))
            if z.is_unit()]


class PrimeType(str, Enum):
    INERT = 'inert'
    SPLIT = 'split'
    RAMIFIED = 'ramified'


@dataclass(frozen=True)
class PrimeClass:
    p: int
    kind: PrimeType
    witness: Optional[EisensteinInteger] = None

    def to_dict(self) -> dict:
        return {'p': self.p, 'mod3': self.p % 3, 'type': self.kind.value,
                'witness': str(self.witness) if self.witness else None}


def _norm_bound(n: int) -> int:
    # max(|x|, |y|) over x^2 - xy + y^2 = n
    return isqrt(4 * n // 3)


def _split_witness(p: int) -> EisensteinInteger:
    """u + v*w of norm p with 0 < v <= u, smallest v first."""
    bound = _norm_bound(p)
    for v in range(1, bound + 1):
        for u in range(v, bound + 1):
            z = EisensteinInteger(u, v)
            if z.norm == p:
                return z
    raise ArithmeticError(f"no element of norm {p} found below {bound}")


def classify_prime(p: int) -> PrimeClass:
    """Splitting type of the rational prime p in Z[w], read off p mod 3."""
    if not isprime(p):
        raise EisensteinError(f"{p} is not prime")
    if p == 3:
        return PrimeClass(p, PrimeType.RAMIFIED, EisensteinInteger(1, -1))
    if p % 3 == 1:
        return PrimeClass(p, PrimeType.SPLIT, _split_witness(p))
    return PrimeClass(p, PrimeType.INERT)


def representable_as_norm(n: int, positive_domain: bool = True) -> Optional[Tuple[int, int]]:
    """A pair (x, y) with x^2 - xy + y^2 = n, or None.

    In the positive domain x, y >= 1 and the witness is the pair with x <= y
    closest to the diagonal. Otherwise any integers are allowed, and a
    positive witness is still preferred.
    """
    if n < 1:
        raise EisensteinError(f"n must be positive, got {n}")
    candidates = [(r.x, r.y) for r in representations(MINUS_FORM, n) if r.x <= r.y]
    if candidates:
        return min(candidates, key=lambda xy: (xy[1] - xy[0], xy))
    if positive_domain:
        return None
    bound = _norm_bound(n)
    for x in range(-bound, bound + 1):
        for y in range(-bound, bound + 1):
            if x * x - x * y + y * y == n:
                return (x, y)
    return None


def inert_divisibility_check(p: int, bound: int) -> CheckResult:
    """p | x^2 - xy + y^2 forces p | x and p | y, for 1 <= x, y <= bound."""
    if classify_prime(p).kind is not PrimeType.INERT:
        logger.debug("%d is not inert; expecting a counterexample", p)
    for x in range(1, bound + 1):
        for y in range(1, bound + 1):
            value = x * x - x * y + y * y
            if value % p == 0 and (x % p or y % p):
                return CheckResult(False, (x, y), f"{p} divides {value} but not both of {x}, {y}")
    return PASS


def prime_table(bound: int) -> List[PrimeClass]:
    """Classification of every prime p < bound."""
    return [classify_prime(p) for p in primerange(2, bound)]
