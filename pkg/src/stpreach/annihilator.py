"""Rational polynomials and minimal A-annihilators under the V-product.

An A-annihilator of x is a monic q with q(A) ⋉→ x = 0, where the powers
A^j ⋉→ x generally live in different dimensions and are combined with
V-addition.  The minimal one is found from the first linear dependence in the
Krylov chain x, A ⋉→ x, A^2 ⋉→ x, ... after lifting to a common dimension.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import lcm
from typing import Iterable, Sequence

from .dimension import build_profile, minimal_invariant_time
from .linalg import solve_combination
from .reachability import PreconditionError
from .stp_core import (
    RMatrix,
    RVector,
    as_rational,
    delta,
    is_dimension_bounded,
    lift,
    power_vprod,
    vprod,
    vsum,
)

# Krylov chains of dimension-unbounded matrices need not close up.
UNBOUNDED_MAX_DEGREE = 32


class Poly:
    """Univariate polynomial with Fraction coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def monomial(cls, n: int, c=1) -> Poly:
        return cls([0] * n + [c])

    @classmethod
    def from_roots(cls, roots: Iterable) -> Poly:
        return reduce(lambda acc, r: acc * cls([-as_rational(r), 1]), roots, cls([1]))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def monic(self) -> Poly:
        if self.is_zero():
            raise ZeroDivisionError("zero polynomial has no monic form")
        lc = self.lead
        return Poly(c / lc for c in self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly([other])
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: Poly) -> Poly:
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return Poly((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))

    def __neg__(self) -> Poly:
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other) -> Poly:
        if not isinstance(other, Poly):
            c = as_rational(other)
            return Poly(c * a for a in self.coeffs)
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __divmod__(self, other: Poly) -> tuple[Poly, Poly]:
        return poly_divmod(self, other)

    def __floordiv__(self, other: Poly) -> Poly:
        return poly_divmod(self, other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return poly_divmod(self, other)[1]

    def __call__(self, z):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def divides(self, other: Poly) -> bool:
        return (other % self).is_zero()

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)!r})"


def format_poly(q: Poly, var: str = "z") -> str:
    """Render as e.g. ``z^4 - 2z^3 - 2z^2 + 2z + 1``."""
    if q.is_zero():
        return "0"
    parts = []
    for n in range(q.degree, -1, -1):
        c = q.coeffs[n]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if n == 0:
            body = str(mag)
        else:
            mono = var if n == 1 else f"{var}^{n}"
            if mag == 1:
                body = mono
            elif mag.denominator == 1:
                body = f"{mag}{mono}"
            else:
                body = f"({mag}){mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def poly_divmod(f: Poly, g: Poly) -> tuple[Poly, Poly]:
    if g.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    r = list(f.coeffs)
    dg, lg = g.degree, g.lead
    if len(r) - 1 < dg:
        return Poly(), f
    q = [Fraction(0)] * (len(r) - dg)
    for i in range(len(r) - 1 - dg, -1, -1):
        c = r[i + dg] / lg
        q[i] = c
        if c:
            for j, b in enumerate(g.coeffs):
                r[i + j] -= c * b
    return Poly(q), Poly(r[:dg])


def poly_gcd(f: Poly, g: Poly) -> Poly:
    if f.is_zero() and g.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    while not g.is_zero():
        f, g = g, f % g
    return f.monic()


def poly_lcm(f: Poly, g: Poly) -> Poly:
    if f.is_zero() and g.is_zero():
        raise ValueError("lcm(0, 0) is undefined")
    if f.is_zero() or g.is_zero():
        return Poly()
    return ((f * g) // poly_gcd(f, g)).monic()


def poly_lcm_all(polys: Iterable[Poly]) -> Poly:
    return reduce(poly_lcm, polys, Poly([1]))


def eval_on_vector(q: Poly, A: RMatrix, x: RVector) -> RVector:
    """q(A) ⋉→ x, the V-sum of c_j A^j ⋉→ x."""
    if q.is_zero():
        raise ValueError("cannot evaluate the zero polynomial")
    terms, cur = [], x
    for j, c in enumerate(q.coeffs):
        if j:
            cur = vprod(A, cur)
        terms.append(cur)
    return vsum(terms, q.coeffs)


def is_annihilator(q: Poly, A: RMatrix, x: RVector) -> bool:
    return eval_on_vector(q, A, x).is_zero()


@dataclass
class KrylovChain:
    """x_0, x_1 = A ⋉→ x_0, ... together with the lcm of their dimensions."""

    A: RMatrix
    base: RVector
    iterates: list[RVector]
    common_dim: int

    @classmethod
    def start(cls, A: RMatrix, x: RVector) -> KrylovChain:
        return cls(A, x, [x], x.dim)

    def extend(self) -> RVector:
        nxt = vprod(self.A, self.iterates[-1])
        self.iterates.append(nxt)
        self.common_dim = lcm(self.common_dim, nxt.dim)
        return nxt

    def lifted(self) -> list[RVector]:
        return [lift(v, self.common_dim) for v in self.iterates]


def min_annihilator_vector(A: RMatrix, x: RVector, max_degree: int | None = None) -> Poly:
    """Least-degree monic q with q(A) ⋉→ x = 0.

    Lifting is injective and linear, so earlier iterates stay independent in
    each new common dimension and the first dependence is unique.
    """
    if x.is_zero():
        return Poly([1])
    if max_degree is None and not is_dimension_bounded(A):
        max_degree = UNBOUNDED_MAX_DEGREE
    chain = KrylovChain.start(A, x)
    while True:
        i = len(chain.iterates)
        if max_degree is not None and i > max_degree:
            raise RuntimeError(f"no A-annihilator of degree <= {max_degree} found")
        chain.extend()
        lifted = chain.lifted()
        c = solve_combination([v.entries for v in lifted[:-1]], lifted[-1].entries)
        if c is not None:
            return Poly([-v for v in c] + [1])


def min_annihilator_span(A: RMatrix, vectors: Sequence[RVector]) -> Poly:
    if not vectors:
        raise ValueError("need at least one vector")
    return poly_lcm_all(min_annihilator_vector(A, v) for v in vectors)


def min_annihilator_space(A: RMatrix, n: int) -> Poly:
    if n < 1:
        raise ValueError("n must be positive")
    return min_annihilator_span(A, [delta(n, i) for i in range(1, n + 1)])


def _bounded_params(A: RMatrix) -> tuple[int, int]:
    if not is_dimension_bounded(A):
        raise PreconditionError(
            f"A is {A.rows}x{A.cols}; rows must divide columns for a dimension-bounded system"
        )
    return A.rows, A.cols // A.rows


def union_annihilators(A: RMatrix, p: int) -> list[Poly]:
    """Minimal annihilators of A^{t*} ⋉→ δ_p^i, i = 1..p."""
    m, k = _bounded_params(A)
    t_star = minimal_invariant_time(m, k, p)
    return [
        min_annihilator_vector(A, power_vprod(A, t_star, delta(p, i)))
        for i in range(1, p + 1)
    ]


def min_annihilator_union(A: RMatrix, p: int) -> Poly:
    """Minimal annihilator of the union of R_t over t >= t*."""
    return poly_lcm_all(union_annihilators(A, p))


class UnionVerdict(enum.Enum):
    PROPER_SUBSET = "ProperSubset"
    INCONCLUSIVE = "Inconclusive"


def union_proper_test(A: RMatrix, p: int) -> UnionVerdict:
    """PROPER_SUBSET certifies that the post-t* reachable union misses part
    of V_{r*}.  Equal annihilators prove nothing either way."""
    m, k = _bounded_params(A)
    r_star = build_profile(m, k, p).r_star
    q = min_annihilator_union(A, p)
    f = min_annihilator_space(A, r_star)
    return UnionVerdict.INCONCLUSIVE if q == f else UnionVerdict.PROPER_SUBSET


class FilterVerdict(enum.Enum):
    PASS = "Pass"
    FAIL = "Fail"


def necessary_reach_filter(A: RMatrix, p: int, x: RVector) -> FilterVerdict:
    """FAIL proves x is not reachable at any t >= t*.

    Every reachable x is annihilated by the union's minimal annihilator q, so
    its own minimal annihilator must divide q.
    """
    m, k = _bounded_params(A)
    r_star = build_profile(m, k, p).r_star
    if x.dim != r_star:
        raise ValueError(f"state is in V_{x.dim}, invariant space is V_{r_star}")
    q = min_annihilator_union(A, p)
    qx = min_annihilator_vector(A, x)
    return FilterVerdict.PASS if qx.divides(q) else FilterVerdict.FAIL
