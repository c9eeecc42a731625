"""Exact Gaussian elimination on lists of Fraction rows."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def rref(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns the nonzero rows and pivot columns.

    Pivots are the leftmost nonzero entries and are scaled to 1, so two
    spanning sets of the same row space give identical output.
    """
    M = [list(r) for r in rows]
    if not M:
        return [], []
    ncols = len(M[0])
    pivots: list[int] = []
    pr = 0
    for c in range(ncols):
        sel = next((i for i in range(pr, len(M)) if M[i][c]), None)
        if sel is None:
            continue
        M[pr], M[sel] = M[sel], M[pr]
        piv = M[pr][c]
        if piv != 1:
            M[pr] = [v / piv for v in M[pr]]
        prow = M[pr]
        for i in range(len(M)):
            if i != pr and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], prow)]
        pivots.append(c)
        pr += 1
        if pr == len(M):
            break
    return M[:pr], pivots


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    return len(rref(rows)[1])


def solve_combination(
    basis: Sequence[Sequence[Fraction]], target: Sequence[Fraction]
) -> list[Fraction] | None:
    """Coefficients c with sum c_i * basis[i] == target, or None.

    ``basis`` must be linearly independent; the solution is then unique.
    """
    n = len(basis)
    if n == 0:
        return [] if not any(target) else None
    # columns are basis vectors: augmented system [B | target]
    dim = len(target)
    aug = [[basis[j][i] for j in range(n)] + [target[i]] for i in range(dim)]
    R, pivots = rref(aug)
    if n in pivots:
        return None
    coeffs = [Fraction(0)] * n
    for row, c in zip(R, pivots):
        coeffs[c] = row[n]
    return coeffs
