"""Exact rational polynomial algebra for the deduction engine.

Polynomials live in a fixed, ordered variable universe (a ``PolynomialRing``)
and are backed by sympy's sparse ``PolyRing`` over ``QQ`` in graded
lexicographic order. Only small multivariate problems are expected: the
engine keeps per-variable degrees under a cap and signals ``Deferred`` when
an operation would exceed it.
"""

from fractions import Fraction
from functools import lru_cache
from typing import Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from sympy import QQ, Symbol
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, PolyRing

Rational = Fraction

DEFAULT_DEGREE_CAP = 16

Number = Union[int, Fraction]


class Deferred(ArithmeticError):
    """Result would exceed the configured degree cap."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


def to_rational(value) -> Fraction:
    """Convert ints, Fractions and sympy ground elements to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    return Fraction(int(value.numerator), int(value.denominator))


def _qq(value: Number):
    value = to_rational(value)
    return QQ(value.numerator, value.denominator)


def format_rational(value: Fraction) -> str:
    value = to_rational(value)
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


@lru_cache(maxsize=None)
def _sympy_ring(names: Tuple[str, ...]) -> PolyRing:
    return PolyRing([Symbol(name) for name in names], QQ, grlex)


class PolynomialRing:
    """An ordered variable universe over the rationals.

    ``variables`` are arbitrary hashable identifiers (the engine uses prime
    powers); ``names`` are their display names.
    """

    def __init__(self, variables: Sequence[Hashable], names: Optional[Sequence[str]] = None,
                 degree_cap: int = DEFAULT_DEGREE_CAP):
        self.variables = tuple(variables)
        self.names = tuple(names) if names is not None else tuple(str(v) for v in self.variables)
        if len(self.names) != len(self.variables):
            raise ValueError("one name per variable is required")
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("variables must be distinct")
        self.degree_cap = degree_cap
        self._index = {v: i for i, v in enumerate(self.variables)}
        self.sympy_ring = _sympy_ring(self.names)

    def __eq__(self, other) -> bool:
        return isinstance(other, PolynomialRing) and self.names == other.names \
            and self.variables == other.variables

    def __hash__(self) -> int:
        return hash((self.variables, self.names))

    def __repr__(self) -> str:
        return f"PolynomialRing({', '.join(self.names)})"

    def __contains__(self, var) -> bool:
        return var in self._index

    def index(self, var) -> int:
        try:
            return self._index[var]
        except KeyError:
            raise ValueError(f"{var!r} is not a variable of {self!r}") from None

    def name(self, var) -> str:
        return self.names[self.index(var)]

    def var(self, var) -> 'Polynomial':
        return Polynomial(self, self.sympy_ring.gens[self.index(var)])

    def const(self, value: Number) -> 'Polynomial':
        return Polynomial(self, self.sympy_ring.ground_new(_qq(value)))

    @property
    def zero(self) -> 'Polynomial':
        return Polynomial(self, self.sympy_ring.zero)

    @property
    def one(self) -> 'Polynomial':
        return Polynomial(self, self.sympy_ring.one)

    def from_terms(self, terms: Mapping[Tuple[int, ...], Number]) -> 'Polynomial':
        """Build from {exponent vector: coefficient}."""
        return Polynomial(self, self.sympy_ring.from_dict(
            {tuple(m): _qq(c) for m, c in terms.items() if c}))

    def monomial(self, powers: Mapping[Hashable, int], coefficient: Number = 1) -> 'Polynomial':
        exponents = [0] * len(self.variables)
        for var, exp in powers.items():
            exponents[self.index(var)] += exp
        return self.from_terms({tuple(exponents): coefficient})


class Polynomial:
    """Immutable polynomial with rational coefficients."""

    __slots__ = ('ring', 'element')

    def __init__(self, ring: PolynomialRing, element: PolyElement):
        self.ring = ring
        self.element = element

    # arithmetic -------------------------------------------------------

    def _coerce(self, other) -> Optional[PolyElement]:
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ValueError("polynomials from different rings")
            return other.element
        if isinstance(other, (int, Fraction)):
            return self.ring.sympy_ring.ground_new(_qq(other))
        return None

    def __add__(self, other):
        el = self._coerce(other)
        return NotImplemented if el is None else Polynomial(self.ring, self.element + el)

    __radd__ = __add__

    def __sub__(self, other):
        el = self._coerce(other)
        return NotImplemented if el is None else Polynomial(self.ring, self.element - el)

    def __rsub__(self, other):
        el = self._coerce(other)
        return NotImplemented if el is None else Polynomial(self.ring, el - self.element)

    def __mul__(self, other):
        el = self._coerce(other)
        return NotImplemented if el is None else Polynomial(self.ring, self.element * el)

    __rmul__ = __mul__

    def __neg__(self):
        return Polynomial(self.ring, -self.element)

    def __pow__(self, exponent: int):
        return Polynomial(self.ring, self.element ** exponent)

    def __truediv__(self, other: Number):
        return Polynomial(self.ring, self.element.quo_ground(_qq(other)))

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.element == other.element
        if isinstance(other, (int, Fraction)):
            return self.is_constant and self.constant_value == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ring, frozenset(self.element.items())))

    def __bool__(self) -> bool:
        return bool(self.element)

    # inspection -------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.element

    @property
    def is_constant(self) -> bool:
        return self.element.is_ground

    @property
    def constant_value(self) -> Fraction:
        if not self.is_constant:
            raise ValueError(f"{self} is not constant")
        return to_rational(self.element.const())

    @property
    def variables(self) -> Tuple[Hashable, ...]:
        """Variables occurring with positive degree, in ring order."""
        if not self.element:
            return ()
        degrees = self.element.degrees()
        return tuple(v for v, d in zip(self.ring.variables, degrees) if d > 0)

    @property
    def is_univariate(self) -> bool:
        return len(self.variables) == 1

    def degree(self, var) -> int:
        if not self.element:
            return 0
        return self.element.degree(self.ring.index(var))

    @property
    def max_degree(self) -> int:
        if not self.element or not self.ring.variables:
            return 0
        return max(self.element.degrees())

    @property
    def total_degree(self) -> int:
        if not self.element:
            return 0
        return max(sum(m) for m in self.element.itermonoms())

    def coefficient(self, var, degree: int) -> 'Polynomial':
        """Coefficient of var**degree, as a polynomial in the other variables."""
        return Polynomial(self.ring, self.element.coeff_wrt(self.ring.index(var), degree))

    def terms(self) -> List[Tuple[Tuple[int, ...], Fraction]]:
        return [(m, to_rational(c)) for m, c in self.element.terms()]

    def evaluate(self, values: Mapping[Hashable, Number]) -> Fraction:
        result = self
        for var in self.variables:
            result = substitute(result, var, values[var], cap=None)
        return result.constant_value

    def monic(self) -> 'Polynomial':
        return Polynomial(self.ring, self.element.monic())

    def render(self) -> str:
        return render(self)

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"Polynomial({render(self)})"


def _check_cap(poly: Polynomial, cap: Optional[int]) -> Polynomial:
    if cap is not None and poly.max_degree > cap:
        raise Deferred(f"degree {poly.max_degree} exceeds cap {cap}")
    return poly


def _cap(p: Polynomial, cap) -> Optional[int]:
    return p.ring.degree_cap if cap is ... else cap


def poly_arith(p: Polynomial, q: Polynomial, op: str, cap=...) -> Polynomial:
    """Exact add, sub or mul; raises Deferred past the degree cap."""
    if op == 'add':
        result = p + q
    elif op == 'sub':
        result = p - q
    elif op == 'mul':
        result = p * q
    else:
        raise ValueError(f"unknown operation {op!r}")
    return _check_cap(result, _cap(p, cap))


# univariate helpers ------------------------------------------------------

def _common_variable(*polys: Polynomial):
    found = set()
    for p in polys:
        found.update(p.variables)
    if len(found) > 1:
        raise ValueError(f"expected univariate polynomials in one variable, got {sorted(map(str, found))}")
    return next(iter(found)) if found else None


def _to_univariate(p: Polynomial, var) -> PolyElement:
    ring = _sympy_ring((p.ring.name(var),))
    i = p.ring.index(var)
    return ring.from_dict({(m[i],): c for m, c in p.element.iterterms()})


def _from_univariate(ring: PolynomialRing, var, element: PolyElement) -> Polynomial:
    i = ring.index(var)
    width = len(ring.variables)
    terms = {}
    for (e,), c in element.iterterms():
        monom = [0] * width
        monom[i] = e
        terms[tuple(monom)] = c
    return Polynomial(ring, ring.sympy_ring.from_dict(terms))


def univariate_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Monic gcd of two univariate polynomials in the same variable."""
    if p.is_zero and q.is_zero:
        raise ValueError("gcd(0, 0) is undefined")
    var = _common_variable(p, q)
    if var is None:
        return p.ring.one
    g = _to_univariate(p, var).gcd(_to_univariate(q, var)).monic()
    return _from_univariate(p.ring, var, g)


def _linear_factors(p: Polynomial):
    var = _common_variable(p)
    if p.is_zero:
        raise ValueError("the zero polynomial has every root")
    if var is None:
        return None, [], []
    _, factors = _to_univariate(p, var).factor_list()
    roots, rest = [], []
    for factor, mult in factors:
        if factor.degree() == 1:
            coeffs = dict(factor.iterterms())
            a = to_rational(coeffs[(1,)])
            b = to_rational(coeffs.get((0,), 0))
            roots.append(-b / a)
        else:
            rest.append((factor, mult))
    return var, sorted(set(roots)), rest


def rational_roots(p: Polynomial) -> List[Fraction]:
    """Distinct rational roots, ascending."""
    return _linear_factors(p)[1]


def deflate(p: Polynomial) -> Tuple[List[Fraction], Polynomial]:
    """Rational roots plus the monic cofactor with all linear factors removed."""
    var, roots, rest = _linear_factors(p)
    if var is None:
        return [], p.ring.one
    cofactor = _sympy_ring((p.ring.name(var),)).one
    for factor, mult in rest:
        cofactor *= factor ** mult
    return roots, _from_univariate(p.ring, var, cofactor.monic())


# elimination and substitution -------------------------------------------

def resultant_eliminate(p: Polynomial, q: Polynomial, var, cap=...) -> Polynomial:
    """Resultant of p and q with respect to var."""
    if p.ring != q.ring:
        raise ValueError("polynomials from different rings")
    if p.degree(var) < 1 or q.degree(var) < 1:
        raise ValueError(f"both polynomials must contain {p.ring.name(var)}")
    ring = p.ring
    others = sorted((set(p.variables) | set(q.variables)) - {var}, key=ring.index)
    order = [var] + others
    local = _sympy_ring(tuple(ring.name(v) for v in order))
    positions = [ring.index(v) for v in order]

    def project(poly: Polynomial) -> PolyElement:
        return local.from_dict({tuple(m[i] for i in positions): c
                                for m, c in poly.element.iterterms()})

    res = project(p).resultant(project(q))
    if not others:
        result = ring.const(to_rational(res))
    else:
        width = len(ring.variables)
        terms = {}
        for monom, c in res.iterterms():
            big = [0] * width
            for v, e in zip(others, monom):
                big[ring.index(v)] = e
            terms[tuple(big)] = c
        result = Polynomial(ring, ring.sympy_ring.from_dict(terms))
    return _check_cap(result, _cap(p, cap))


def substitute(p: Polynomial, var, value: Union[Number, Polynomial], cap=...) -> Polynomial:
    """Replace var by a rational value or by another polynomial."""
    ring = p.ring
    gen = ring.sympy_ring.gens[ring.index(var)]
    if isinstance(value, Polynomial):
        if value.ring != ring:
            raise ValueError("substituted polynomial comes from a different ring")
        element = p.element.compose(gen, value.element)
    else:
        element = p.element.subs(gen, _qq(value))
    return _check_cap(Polynomial(ring, element), _cap(p, cap))


# rendering ---------------------------------------------------------------

def _render_monomial(ring: PolynomialRing, monom: Iterable[int]) -> str:
    parts = []
    for name, exp in zip(ring.names, monom):
        if exp == 1:
            parts.append(name)
        elif exp > 1:
            parts.append(f"{name}^{exp}")
    return '*'.join(parts)


def render(p: Polynomial) -> str:
    """Canonical text form, terms in graded lexicographic order."""
    if p.is_zero:
        return '0'
    out = []
    for monom, coeff in p.terms():
        coeff = to_rational(coeff)
        sign = '-' if coeff < 0 else '+'
        magnitude = abs(coeff)
        body = _render_monomial(p.ring, monom)
        if not body:
            text = format_rational(magnitude)
        elif magnitude == 1:
            text = body
        else:
            text = f"{format_rational(magnitude)}*{body}"
        if not out:
            out.append(text if sign == '+' else f"-{text}")
        else:
            out.append(f" {sign} {text}")
    return ''.join(out)

