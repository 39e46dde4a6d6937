"""Positive definite binary quadratic forms and their representation tables."""

from dataclasses import dataclass
from math import isqrt
from types import MappingProxyType
from typing import Dict, List, Mapping, Tuple


class FormError(ValueError):
    """Raised for malformed or non positive definite forms and bad sizes."""


@dataclass(frozen=True)
class BinaryQuadraticForm:
    """Q(x, y) = a*x^2 + b*x*y + c*y^2 with integer coefficients."""
    a: int
    b: int
    c: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def evaluate(self, x, y):
        """Evaluate the form. Works for ints, Fractions and polynomials."""
        return self.a * x * x + self.b * x * y + self.c * y * y

    def spec(self) -> str:
        return f"{self.a},{self.b},{self.c}"

    def __str__(self) -> str:
        return self.spec()


@dataclass(frozen=True, order=True)
class Representation:
    """A way of writing n as Q(x, y) with x, y >= 1."""
    n: int
    x: int
    y: int


def discriminant(form: BinaryQuadraticForm) -> int:
    return form.discriminant


def is_positive_definite(form) -> bool:
    return form.a > 0 and form.b * form.b - 4 * form.a * form.c < 0


def require_positive_definite(form: BinaryQuadraticForm) -> BinaryQuadraticForm:
    if not is_positive_definite(form):
        raise FormError(f"form {form.spec()} is not positive definite")
    return form


def evaluate(form: BinaryQuadraticForm, x, y):
    return form.evaluate(x, y)


def parse_form(text: str) -> BinaryQuadraticForm:
    """Parse an "a,b,c" string."""
    parts = [p.strip() for p in str(text).split(',')]
    if len(parts) != 3:
        raise FormError(f"expected a,b,c but got {text!r}")
    try:
        a, b, c = (int(p) for p in parts)
    except ValueError:
        raise FormError(f"form coefficients must be integers: {text!r}") from None
    return require_positive_definite(BinaryQuadraticForm(a, b, c))


def argument_bound(form: BinaryQuadraticForm, n: int) -> int:
    """Largest possible max(x, y) over solutions of Q(x, y) = n.

    Completing the square gives Q(x, y) >= D/(4*max(a, c)) * max(x, y)^2
    with D = 4ac - b^2.
    """
    require_positive_definite(form)
    d = 4 * form.a * form.c - form.b * form.b
    return isqrt(4 * max(form.a, form.c) * n // d)


def representations(form: BinaryQuadraticForm, n: int) -> List[Representation]:
    """All (x, y) with x, y >= 1 and Q(x, y) = n, in lexicographic order."""
    if n < 1:
        raise FormError(f"n must be positive, got {n}")
    bound = argument_bound(form, n)
    return [
        Representation(n, x, y)
        for x in range(1, bound + 1)
        for y in range(1, bound + 1)
        if form.evaluate(x, y) == n
    ]


def representation_table(form: BinaryQuadraticForm,
                         limit: int) -> Mapping[int, Tuple[Representation, ...]]:
    """Map every represented n <= limit to its representations.

    The table is read-only and ordered by n; each entry is lexicographic.
    """
    if limit < 1:
        raise FormError(f"N must be positive, got {limit}")
    bound = argument_bound(form, limit)
    table: Dict[int, List[Representation]] = {}
    for x in range(1, bound + 1):
        for y in range(1, bound + 1):
            n = form.evaluate(x, y)
            if n <= limit:
                table.setdefault(n, []).append(Representation(n, x, y))
    return MappingProxyType({n: tuple(table[n]) for n in sorted(table)})


PLUS_FORM = BinaryQuadraticForm(1, 1, 1)
MINUS_FORM = BinaryQuadraticForm(1, -1, 1)
