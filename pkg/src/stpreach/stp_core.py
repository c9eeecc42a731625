"""Exact matrices and vectors over the rationals plus the cross-dimensional
products: Kronecker, semi-tensor (STP), lifting, V-product and V-addition.

Everything is immutable; scalars are :class:`fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

Rational = Fraction


class DimensionError(ValueError):
    """Operands have incompatible dimensions."""


def as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(value)


@dataclass(frozen=True)
class RVector:
    entries: tuple[Fraction, ...]

    def __init__(self, entries: Iterable):
        if hasattr(entries, "tolist"):
            entries = entries.tolist()
        vals = tuple(as_rational(v) for v in entries)
        if not vals:
            raise DimensionError("vector must have positive dimension")
        object.__setattr__(self, "entries", vals)

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __add__(self, other: RVector) -> RVector:
        if other.dim != self.dim:
            raise DimensionError(f"cannot add V_{self.dim} and V_{other.dim}; use vadd")
        return RVector(a + b for a, b in zip(self.entries, other.entries))

    def __sub__(self, other: RVector) -> RVector:
        if other.dim != self.dim:
            raise DimensionError(f"cannot subtract V_{other.dim} from V_{self.dim}")
        return RVector(a - b for a, b in zip(self.entries, other.entries))

    def __neg__(self) -> RVector:
        return RVector(-a for a in self.entries)

    def scale(self, c) -> RVector:
        c = as_rational(c)
        return RVector(c * a for a in self.entries)

    def __rmul__(self, c) -> RVector:
        return self.scale(c)

    def __repr__(self) -> str:
        return "RVector([" + ", ".join(str(v) for v in self.entries) + "])"


@dataclass(frozen=True)
class RMatrix:
    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __init__(self, data, rows: int | None = None, cols: int | None = None):
        """Build from nested rows, or from a flat row-major sequence with
        explicit ``rows`` and ``cols``."""
        if hasattr(data, "tolist"):
            data = data.tolist()
        if rows is None and cols is None:
            data = [list(r) for r in data]
            if not data or not data[0]:
                raise DimensionError("matrix must have positive dimensions")
            rows, cols = len(data), len(data[0])
            if any(len(r) != cols for r in data):
                raise DimensionError("ragged matrix rows")
            flat = [v for r in data for v in r]
        else:
            flat = list(data)
            if rows is None or cols is None:
                raise ValueError("give both rows and cols for flat data")
        if rows < 1 or cols < 1:
            raise DimensionError("matrix must have positive dimensions")
        if len(flat) != rows * cols:
            raise DimensionError(f"expected {rows * cols} entries, got {len(flat)}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", tuple(as_rational(v) for v in flat))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> RVector:
        return RVector(self.entries[j::self.cols])

    def tolist(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> RMatrix:
        return RMatrix([self.entries[j::self.cols] for j in range(self.cols)])

    def __matmul__(self, other):
        if isinstance(other, RVector):
            if other.dim != self.cols:
                raise DimensionError(f"{self.shape} @ V_{other.dim}")
            x = other.entries
            return RVector(
                sum((a * b for a, b in zip(self.row(i), x) if a), Fraction(0))
                for i in range(self.rows)
            )
        if other.rows != self.cols:
            raise DimensionError(f"{self.shape} @ {other.shape}")
        out = []
        for i in range(self.rows):
            r = self.row(i)
            acc = [Fraction(0)] * other.cols
            for j, a in enumerate(r):
                if a:
                    orow = other.row(j)
                    for c in range(other.cols):
                        if orow[c]:
                            acc[c] += a * orow[c]
            out.extend(acc)
        return RMatrix(out, self.rows, other.cols)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(v) for v in self.row(i)) for i in range(self.rows))
        return f"RMatrix({self.rows}x{self.cols}: [{body}])"


def identity(n: int) -> RMatrix:
    return RMatrix([1 if i == j else 0 for i in range(n) for j in range(n)], n, n)


def delta(n: int, i: int) -> RVector:
    """``i``-th column of I_n, 1-based as in the usual delta_n^i notation."""
    if not 1 <= i <= n:
        raise ValueError(f"delta index {i} outside 1..{n}")
    return RVector([1 if j == i - 1 else 0 for j in range(n)])


def zeros(n: int) -> RVector:
    return RVector([0] * n)


def ones(n: int) -> RVector:
    return RVector([1] * n)


def kron(A: RMatrix, B: RMatrix) -> RMatrix:
    out = []
    for a in range(A.rows):
        for b in range(B.rows):
            brow = B.row(b)
            for c in range(A.cols):
                x = A[a, c]
                out.extend(x * y for y in brow)
    return RMatrix(out, A.rows * B.rows, A.cols * B.cols)


def stp(P: RMatrix, Q: RMatrix) -> RMatrix:
    """Semi-tensor product ``(P ⊗ I_{t/n})(Q ⊗ I_{t/p})`` with t = lcm(n, p).

    Evaluated without building either Kronecker factor.
    """
    n, p = P.cols, Q.rows
    t = lcm(n, p)
    a, b = t // n, t // p
    rows, cols = P.rows * a, Q.cols * b
    out = [Fraction(0)] * (rows * cols)
    for i in range(P.rows):
        prow = P.row(i)
        for alpha in range(a):
            base = (i * a + alpha) * cols
            for j, pij in enumerate(prow):
                if not pij:
                    continue
                u, gamma = divmod(j * a + alpha, b)
                qrow = Q.row(u)
                for l, q in enumerate(qrow):
                    if q:
                        out[base + l * b + gamma] += pij * q
    return RMatrix(out, rows, cols)


def lift(x: RVector, s: int) -> RVector:
    """Embed ``x`` into V_s as ``x ⊗ 1_{s/dim}``."""
    if s < 1 or s % x.dim:
        raise DimensionError(f"cannot lift V_{x.dim} into V_{s}")
    rep = s // x.dim
    if rep == 1:
        return x
    return RVector(v for v in x.entries for _ in range(rep))


def vprod_dim(rows: int, cols: int, r: int) -> int:
    return rows * lcm(cols, r) // cols


def vprod(A: RMatrix, x: RVector) -> RVector:
    """V-product ``(A ⊗ I_{s/n})(x ⊗ 1_{s/r})``, s = lcm(n, r)."""
    n, r = A.cols, x.dim
    if n == r:
        return A @ x
    s = lcm(n, r)
    a, b = s // n, s // r
    xs = x.entries
    out = []
    for i in range(A.rows):
        arow = A.row(i)
        for alpha in range(a):
            acc = Fraction(0)
            for j, aij in enumerate(arow):
                if aij:
                    v = xs[(j * a + alpha) // b]
                    if v:
                        acc += aij * v
            out.append(acc)
    return RVector(out)


def vprod_naive(A: RMatrix, x: RVector) -> RVector:
    """Reference V-product that materializes both Kronecker factors."""
    s = lcm(A.cols, x.dim)
    return kron(A, identity(s // A.cols)) @ lift(x, s)


def vadd(x: RVector, y: RVector) -> RVector:
    s = lcm(x.dim, y.dim)
    return lift(x, s) + lift(y, s)


def vsum(xs: Sequence[RVector], coeffs: Sequence | None = None) -> RVector:
    """Weighted V-sum: lift every operand to the lcm of all dims, then add."""
    if not xs:
        raise ValueError("vsum needs at least one vector")
    if coeffs is None:
        coeffs = [1] * len(xs)
    if len(coeffs) != len(xs):
        raise ValueError(f"{len(xs)} vectors but {len(coeffs)} coefficients")
    s = lcm(*(x.dim for x in xs))
    acc = [Fraction(0)] * s
    for x, c in zip(xs, coeffs):
        c = as_rational(c)
        if not c:
            continue
        rep = s // x.dim
        for idx, v in enumerate(x.entries):
            if v:
                cv = c * v
                for u in range(idx * rep, (idx + 1) * rep):
                    acc[u] += cv
    return RVector(acc)


def power_vprod(A: RMatrix, i: int, x: RVector) -> RVector:
    if i < 0:
        raise ValueError("power must be nonnegative")
    for _ in range(i):
        x = vprod(A, x)
    return x


def is_dimension_bounded(A: RMatrix) -> bool:
    return A.cols % A.rows == 0
