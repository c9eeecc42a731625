"""t-step reachable subspaces and the rank test for membership."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linalg import rank, rref, solve_combination
from .stp_core import DimensionError, RMatrix, RVector, delta, vprod


class PreconditionError(ValueError):
    """Input violates a mathematical precondition (not a parse problem)."""


def rank_of(vectors: Sequence[RVector], ambient: int | None = None) -> int:
    if not vectors:
        return 0
    if ambient is None:
        ambient = vectors[0].dim
    for v in vectors:
        if v.dim != ambient:
            raise DimensionError(f"vector in V_{v.dim} mixed with V_{ambient}")
    return rank([v.entries for v in vectors])


@dataclass(frozen=True)
class Subspace:
    """Subspace of V_ambient held as a canonical (RREF) basis."""

    ambient: int
    basis: tuple[RVector, ...]

    @classmethod
    def span(cls, vectors: Sequence[RVector], ambient: int | None = None) -> Subspace:
        if ambient is None:
            if not vectors:
                raise ValueError("ambient dimension needed for an empty span")
            ambient = vectors[0].dim
        for v in vectors:
            if v.dim != ambient:
                raise DimensionError(f"vector in V_{v.dim} mixed with V_{ambient}")
        R, _ = rref([v.entries for v in vectors])
        return cls(ambient, tuple(RVector(r) for r in R))

    @classmethod
    def full(cls, n: int) -> Subspace:
        return cls(n, tuple(delta(n, i) for i in range(1, n + 1)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __contains__(self, x: RVector) -> bool:
        return is_member(self, x).reachable


@dataclass(frozen=True)
class ReachVerdict:
    """Outcome of the rank test.  Rank fields are None when the query vector
    lives in the wrong dimension, in which case ``diagnostic`` says why."""

    reachable: bool
    rank_with: int | None
    rank_without: int | None
    time: int | None = None
    diagnostic: str | None = None


def reach_images(A: RMatrix, p: int, t: int) -> list[RVector]:
    """A^t ⋉→ δ_p^i for i = 1..p."""
    if p < 1 or t < 0:
        raise ValueError("need p >= 1 and t >= 0")
    vs = [delta(p, i) for i in range(1, p + 1)]
    for _ in range(t):
        vs = [vprod(A, v) for v in vs]
    return vs


def reach_basis(A: RMatrix, p: int, t: int) -> Subspace:
    imgs = reach_images(A, p, t)
    return Subspace.span(imgs, imgs[0].dim)


def is_member(S: Subspace, x: RVector, time: int | None = None) -> ReachVerdict:
    if x.dim != S.ambient:
        return ReachVerdict(
            False, None, None, time,
            f"state lives in V_{x.dim} but the subspace is in V_{S.ambient}",
        )
    r0 = S.dim
    r1 = rank([b.entries for b in S.basis] + [x.entries])
    return ReachVerdict(r1 == r0, r1, r0, time)


def reach_subspaces(A: RMatrix, p: int, t_max: int) -> list[Subspace]:
    """R_0, ..., R_{t_max}, sharing the image computation across t."""
    vs = [delta(p, i) for i in range(1, p + 1)]
    out = [Subspace.span(vs)]
    for _ in range(t_max):
        vs = [vprod(A, v) for v in vs]
        out.append(Subspace.span(vs))
    return out


def scan_reachability(A: RMatrix, p: int, x: RVector, t_max: int) -> set[int]:
    if t_max < 0:
        raise ValueError("t_max must be nonnegative")
    return {
        t for t, S in enumerate(reach_subspaces(A, p, t_max))
        if S.ambient == x.dim and is_member(S, x).reachable
    }


def induced_matrix(A: RMatrix, r: int) -> RMatrix:
    """Square matrix of x -> A ⋉→ x on an A-invariant V_r."""
    cols = []
    for i in range(1, r + 1):
        c = vprod(A, delta(r, i))
        if c.dim != r:
            raise PreconditionError(
                f"V_{r} is not A-invariant: column {i} maps into V_{c.dim}"
            )
        cols.append(c.entries)
    return RMatrix([[cols[j][i] for j in range(r)] for i in range(r)])


@dataclass(frozen=True)
class SubspaceRelation:
    relation: str  # "equal", "subset", "superset" or "incomparable"
    intersection_dim: int
    sum_dim: int


def subspace_relate(S1: Subspace, S2: Subspace) -> SubspaceRelation:
    """How S1 sits relative to S2 ("subset" means S1 ⊂ S2)."""
    if S1.ambient != S2.ambient:
        raise DimensionError(f"V_{S1.ambient} vs V_{S2.ambient}")
    total = rank_of(list(S1.basis) + list(S2.basis), S1.ambient)
    inter = S1.dim + S2.dim - total
    if S1.dim == S2.dim == total:
        rel = "equal"
    elif total == S2.dim:
        rel = "subset"
    elif total == S1.dim:
        rel = "superset"
    else:
        rel = "incomparable"
    return SubspaceRelation(rel, inter, total)


def subspace_image(M: RMatrix, S: Subspace) -> Subspace:
    return Subspace.span([M @ b for b in S.basis], M.rows)


def coordinates(S: Subspace, x: RVector) -> list[Fraction] | None:
    if x.dim != S.ambient:
        return None
    return solve_combination([b.entries for b in S.basis], x.entries)
