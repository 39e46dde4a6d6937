"""Known solution families and exhaustive checks against the functional equation."""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable, Dict, Iterable, List, Optional, Tuple, Union

from sympy import isprime, primerange

from quadcommute.forms import BinaryQuadraticForm, Representation


class FamilySpecError(ValueError):
    """Malformed family spec string."""


class Family(ABC):
    """A completely specified multiplicative function."""

    _registry: Dict[str, type] = {}

    @classmethod
    def register(cls, name: str):
        def wrapper(family_class):
            family_class.kind = name
            cls._registry[name] = family_class
            return family_class
        return wrapper

    @classmethod
    def parse(cls, spec: str) -> 'Family':
        """Parse "identity", "const1" or "fp:<p>"."""
        kind, _, arg = str(spec).strip().partition(':')
        family_class = cls._registry.get(kind)
        if family_class is None:
            raise FamilySpecError(f"unknown family {spec!r}; use identity, const1 or fp:<p>")
        return family_class.from_arg(arg)

    @classmethod
    def from_arg(cls, arg: str) -> 'Family':
        if arg:
            raise FamilySpecError(f"family {cls.kind!r} takes no argument")
        return cls()

    @property
    def name(self) -> str:
        return self.kind

    @abstractmethod
    def value(self, n: int) -> Fraction:
        pass

    def __call__(self, n: int) -> Fraction:
        return family_value(self, n)

    def __eq__(self, other) -> bool:
        return isinstance(other, Family) and self.name == other.name

    def __hash__(self) -> int:
        return hash(self.name)

    def __repr__(self) -> str:
        return f"Family({self.name})"


@Family.register('identity')
class Identity(Family):
    def value(self, n: int) -> Fraction:
        return Fraction(n)


@Family.register('const1')
class ConstantOne(Family):
    def value(self, n: int) -> Fraction:
        return Fraction(1)


@Family.register('fp')
class PrimeIndicator(Family):
    """0 on multiples of p, 1 elsewhere."""

    def __init__(self, p: int):
        if not isprime(p):
            raise FamilySpecError(f"fp needs a prime, got {p}")
        self.p = p

    @classmethod
    def from_arg(cls, arg: str) -> 'Family':
        try:
            p = int(arg)
        except ValueError:
            raise FamilySpecError(f"fp needs a prime argument, got {arg!r}") from None
        return cls(p)

    @property
    def name(self) -> str:
        return f"fp:{self.p}"

    def value(self, n: int) -> Fraction:
        return Fraction(0 if n % self.p == 0 else 1)


ArithmeticFunction = Union[Family, Callable[[int], object]]


def family_value(family: Family, n: int) -> Fraction:
    if n < 1:
        raise ValueError(f"families are defined on positive integers, got {n}")
    return family.value(n)


def known_families(limit: int) -> List[Family]:
    """identity, const1 and fp:p for every prime p <= limit."""
    return [Identity(), ConstantOne()] + [PrimeIndicator(p) for p in primerange(2, limit + 1)]


@dataclass(frozen=True)
class CheckResult:
    """pass, or the first failing witness in lexicographic order."""
    passed: bool
    witness: Optional[Tuple[int, ...]] = None
    detail: str = ''

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self) -> dict:
        return {'passed': self.passed,
                'witness': list(self.witness) if self.witness else None,
                'detail': self.detail}


PASS = CheckResult(True)


def _fmt(value) -> str:
    value = Fraction(value)
    return str(value.numerator) if value.denominator == 1 else str(value)


def verify_family(family: Family, form: BinaryQuadraticForm, bound: int) -> CheckResult:
    """f(Q(x,y)) = Q(f(x), f(y)) for all 1 <= x, y <= bound."""
    if bound < 1:
        raise ValueError(f"bound must be positive, got {bound}")
    values = [None] + [family_value(family, k) for k in range(1, bound + 1)]
    for x in range(1, bound + 1):
        fx = values[x]
        for y in range(1, bound + 1):
            n = form.evaluate(x, y)
            lhs = family_value(family, n)
            rhs = form.evaluate(fx, values[y])
            if lhs != rhs:
                return CheckResult(False, (x, y),
                                   f"f({n})={_fmt(lhs)} vs Q(f({x}),f({y}))={_fmt(rhs)}")
    return PASS


def multiplicativity_check(f: ArithmeticFunction, bound: int) -> CheckResult:
    """f(mn) = f(m)f(n) for coprime 2 <= m, n <= bound."""
    for m in range(2, bound + 1):
        for n in range(2, bound + 1):
            if gcd(m, n) != 1:
                continue
            if f(m * n) != f(m) * f(n):
                return CheckResult(False, (m, n),
                                   f"f({m * n})={_fmt(f(m * n))} vs f({m})f({n})={_fmt(f(m) * f(n))}")
    return PASS


def star_condition_check(f: ArithmeticFunction, bound: int) -> CheckResult:
    """For 2 <= n <= bound: f(n-1) = 1 or f(n) = f(n-1) + 1."""
    for n in range(2, bound + 1):
        previous = f(n - 1)
        if previous != 1 and f(n) != previous + 1:
            return CheckResult(False, (n,), f"f({n - 1})={_fmt(previous)}, f({n})={_fmt(f(n))}")
    return PASS


def square_law_check(f: ArithmeticFunction, bound: int) -> CheckResult:
    """f(n^2) = f(n)^2 for n <= bound."""
    for n in range(1, bound + 1):
        if f(n * n) != f(n) ** 2:
            return CheckResult(False, (n,), f"f({n * n})={_fmt(f(n * n))} vs f({n})^2={_fmt(f(n) ** 2)}")
    return PASS


def zero_ideal_check(f: ArithmeticFunction, bound: int) -> CheckResult:
    """If f(p) = 0 for a prime p then f vanishes on every multiple of p up to bound."""
    for p in primerange(2, bound + 1):
        if f(p) != 0:
            continue
        for m in range(2 * p, bound + 1, p):
            if f(m) != 0:
                return CheckResult(False, (p, m), f"f({p})=0 but f({m})={_fmt(f(m))}")
    return PASS


def admissible_indicator_primes(form: BinaryQuadraticForm, prime_limit: int, bound: int) -> List[int]:
    """Primes p < prime_limit whose indicator family satisfies the equation up to bound."""
    return [p for p in primerange(2, prime_limit)
            if verify_family(PrimeIndicator(p), form, bound)]


def prime_power_values(family: Family, prime_powers: Iterable[int]) -> Dict[int, Fraction]:
    return {q: family_value(family, q) for q in prime_powers}


def family_satisfies_constraints(family: Family, constraints: Iterable) -> CheckResult:
    """Plug the family's prime-power values into compiled constraints."""
    for constraint in constraints:
        poly = constraint.polynomial
        value = poly.evaluate(prime_power_values(family, poly.variables))
        if value != 0:
            o = constraint.origin
            witness = (o.n, o.x, o.y) if isinstance(o, Representation) else (o.n,)
            return CheckResult(False, witness, f"{poly.render()} evaluates to {_fmt(value)}")
    return PASS
