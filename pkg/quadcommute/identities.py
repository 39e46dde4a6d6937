"""Polynomial identities behind the induction for x^2 + xy + y^2.

Each ``IdentityPair`` writes the same value Q(u(k), v(k)) = Q(s(k), t(k))
with u(k) the next argument n(k). Knowing f on smaller arguments turns the
identity into a monic quadratic in f(n(k)) whose two roots are linear in k;
two pairs of the same parity share only the root n(k).
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import List, Optional, Tuple

from quadcommute.exactalg import Polynomial, PolynomialRing
from quadcommute.families import CheckResult, PASS
from quadcommute.forms import PLUS_FORM, BinaryQuadraticForm

logger = logging.getLogger(__name__)

K_RING = PolynomialRing(['k'])
TK_RING = PolynomialRing(['t', 'k'])

Linear = Tuple[int, int]  # a*k + b


@dataclass(frozen=True)
class IdentityPair:
    name: str
    left: Tuple[Linear, Linear]
    right: Tuple[Linear, Linear]
    threshold: int

    @property
    def entries(self) -> Tuple[Linear, ...]:
        return self.left + self.right


def linear(ring: PolynomialRing, entry: Linear) -> Polynomial:
    a, b = entry
    return a * ring.var('k') + b


def as_linear(poly: Polynomial) -> Tuple[Fraction, Fraction]:
    """(a, b) with poly = a*k + b."""
    if poly.max_degree > 1:
        raise ValueError(f"{poly.render()} is not linear")
    return poly.coefficient('k', 1).constant_value, poly.coefficient('k', 0).constant_value


def sides(pair: IdentityPair, form: BinaryQuadraticForm = PLUS_FORM, ring: PolynomialRing = K_RING):
    u, v = (linear(ring, e) for e in pair.left)
    s, t = (linear(ring, e) for e in pair.right)
    return form.evaluate(u, v), form.evaluate(s, t)


@dataclass(frozen=True)
class IdentityCheck:
    passed: bool
    left: Polynomial
    right: Polynomial

    @property
    def difference(self) -> Polynomial:
        return self.left - self.right

    def __bool__(self) -> bool:
        return self.passed


def check_identity(pair: IdentityPair, form: BinaryQuadraticForm = PLUS_FORM) -> IdentityCheck:
    left, right = sides(pair, form)
    return IdentityCheck(left == right, left, right)


def _to_k(poly: Polynomial) -> Polynomial:
    """Move a t-free polynomial from (t, k) to (k)."""
    return K_RING.from_terms({(m[1],): c for m, c in poly.terms()})


def vieta_roots(pair: IdentityPair, form: BinaryQuadraticForm = PLUS_FORM) -> Tuple[Polynomial, Polynomial]:
    """Roots of t^2 + v t + v^2 - RHS as linear polynomials in k, n(k) first."""
    t = TK_RING.var('t')
    v = linear(TK_RING, pair.left[1])
    _, rhs = sides(pair, form, TK_RING)
    quadratic = form.evaluate(t, v) - rhs if form.a == 1 else None
    if quadratic is None or quadratic.degree('t') != 2 or quadratic.coefficient('t', 2) != 1:
        raise ValueError(f"{pair.name}: not a monic quadratic in f(n)")

    _, factors = quadratic.element.factor_list()
    roots = []
    for factor, mult in factors:
        factor = Polynomial(TK_RING, factor)
        if factor.degree('t') != 1 or not factor.coefficient('t', 1).is_constant:
            raise ValueError(f"{pair.name}: {quadratic.render()} does not split into linear roots")
        alpha = factor.coefficient('t', 1).constant_value
        roots.extend([_to_k(-factor.coefficient('t', 0) / alpha)] * mult)
    if len(roots) != 2:
        raise ValueError(f"{pair.name}: expected two roots, got {len(roots)}")

    n = linear(K_RING, pair.left[0])
    if roots[1] == n:
        roots.reverse()
    r1, r2 = roots
    v_k = linear(K_RING, pair.left[1])
    _, rhs_k = sides(pair, form)
    if r1 + r2 != -v_k or r1 * r2 != v_k * v_k - rhs_k:
        raise ValueError(f"{pair.name}: roots fail the Vieta relations")
    if r1 != n:
        raise ValueError(f"{pair.name}: n(k) is not a root")
    return r1, r2


def positive_from(pair: IdentityPair) -> int:
    """Smallest k with every argument >= 1."""
    start = None
    for a, b in pair.entries:
        if a <= 0:
            raise ValueError(f"{pair.name}: argument {a}k{b:+d} does not grow")
        k = ceil(Fraction(1 - b, a))
        start = k if start is None else max(start, k)
    return start


def arguments_below(pair: IdentityPair) -> bool:
    """Every argument other than n(k) is below n(k) for k > threshold."""
    n = pair.left[0]
    k = pair.threshold + 1
    for a, b in pair.entries[1:]:
        if a > n[0] or a * k + b >= n[0] * k + n[1]:
            return False
    return True


def _integer_root_in(poly: Polynomial, k_min: int, k_max: int) -> Optional[int]:
    a, b = as_linear(poly)
    if a == 0:
        return k_min if b == 0 else None
    root = -b / a
    if root.denominator == 1 and k_min <= root <= k_max:
        return int(root)
    return None


def common_root_unique(pair_a: IdentityPair, pair_b: IdentityPair,
                       k_min: int, k_max: int) -> CheckResult:
    """For every k in range the two root sets meet exactly in n(k)."""
    n_a, r_a = vieta_roots(pair_a)
    n_b, r_b = vieta_roots(pair_b)
    if n_a != n_b:
        return CheckResult(False, None, f"{pair_a.name} and {pair_b.name} solve for different n(k)")
    if r_a == r_b:
        return CheckResult(False, None, f"second roots coincide: {r_a.render()}")
    for r in (r_a, r_b):
        k = _integer_root_in(r - n_a, k_min, k_max)
        if k is not None:
            return CheckResult(False, (k,), f"{r.render()} meets n(k) at k={k}")

    na, nb = as_linear(n_a)
    ra = as_linear(r_a)
    rb = as_linear(r_b)
    for k in range(k_min, k_max + 1):
        n = na * k + nb
        common = {n, ra[0] * k + ra[1]} & {n, rb[0] * k + rb[1]}
        if common != {n}:
            return CheckResult(False, (k,), f"common roots {sorted(common)} at k={k}")
    logger.debug("%s/%s unique for k in [%d, %d]", pair_a.name, pair_b.name, k_min, k_max)
    return PASS


ODD_SHIFT_3 = IdentityPair('odd/shift-3', ((2, 1), (1, -3)), ((2, -3), (1, 2)), 3)
ODD_SHIFT_10 = IdentityPair('odd/shift-10', ((2, 1), (1, -10)), ((2, -11), (1, 5)), 10)
EVEN_SHIFT_7 = IdentityPair('even/shift-7', ((2, 0), (1, -7)), ((2, -8), (1, 3)), 7)
EVEN_SHIFT_14 = IdentityPair('even/shift-14', ((2, 0), (1, -14)), ((2, -16), (1, 6)), 14)

IDENTITY_PAIRS: List[IdentityPair] = [ODD_SHIFT_3, ODD_SHIFT_10, EVEN_SHIFT_7, EVEN_SHIFT_14]
PARITY_GROUPS = [(ODD_SHIFT_3, ODD_SHIFT_10), (EVEN_SHIFT_7, EVEN_SHIFT_14)]


def induction_start(pair_a: IdentityPair, pair_b: IdentityPair) -> int:
    """First k where both identities apply."""
    return max(pair_a.threshold, pair_b.threshold) + 1
