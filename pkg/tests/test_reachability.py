from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from stpreach import (
    DimensionError,
    PreconditionError,
    RMatrix,
    RVector,
    Subspace,
    delta,
    identity,
    induced_matrix,
    is_member,
    minimal_invariant_time,
    power_vprod,
    rank_of,
    reach_basis,
    scan_reachability,
    subspace_relate,
    vprod,
)
from stpreach.reachability import coordinates, reach_images, subspace_image

from .conftest import A_EX3, Y1, Y2, Y3, matrices, rationals, vectors


def sym_rank(vectors):
    return sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in x] for x in vectors]).rank()


def sym_in_span(vectors, x):
    """Solve basis * c = x with sympy."""
    B = sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in b] for b in vectors]).T
    rhs = sympy.Matrix([sympy.Rational(v.numerator, v.denominator) for v in x])
    try:
        B.gauss_jordan_solve(rhs)
        return True
    except ValueError:
        return False


class TestRank:
    def test_ex3_images(self, Ad3):
        assert rank_of(Ad3) == 3

    def test_ex3_chain(self, d3):
        assert rank_of([power_vprod(A_EX3, j, d3[1]) for j in (1, 2, 3)]) == 3

    def test_zero(self):
        assert rank_of([RVector([0, 0, 0])]) == 0

    def test_mixed(self):
        with pytest.raises(DimensionError):
            rank_of([RVector([1, 0]), RVector([1, 0, 0])])

    @given(st.integers(1, 6).flatmap(lambda n: st.lists(vectors(dim=n), min_size=1, max_size=6)))
    def test_against_sympy(self, vs):
        assert rank_of(vs) == sym_rank(vs)


class TestReachBasis:
    def test_t0_full(self):
        S = reach_basis(A_EX3, 3, 0)
        assert S == Subspace.full(3)

    def test_t1(self):
        S = reach_basis(A_EX3, 3, 1)
        assert (S.ambient, S.dim) == (6, 3)

    def test_t4(self):
        S = reach_basis(A_EX3, 3, 4)
        imgs = [power_vprod(A_EX3, 4, delta(3, i)) for i in (1, 2, 3)]
        assert S.dim == sym_rank(imgs) == 3

    def test_canonical(self):
        a, b = RVector([1, 2, 3]), RVector([0, 1, 1])
        assert Subspace.span([a, b]) == Subspace.span([a.scale(2) + b, b.scale(-3), a])

    @settings(max_examples=40)
    @given(matrices(max_dim=4).filter(lambda A: A.cols % A.rows == 0), st.integers(1, 4), st.integers(0, 3))
    def test_dim_bound(self, A, p, t):
        from stpreach.stp_core import vprod_dim

        S = reach_basis(A, p, t)
        r = p
        for _ in range(t):
            r = vprod_dim(A.rows, A.cols, r)
        assert S.ambient == r
        assert S.dim <= min(p, r)


class TestMembership:
    def test_y1_in_R1(self):
        assert is_member(reach_basis(A_EX3, 3, 1), Y1).reachable

    def test_y2_not_in_R1(self):
        v = is_member(reach_basis(A_EX3, 3, 1), Y2)
        assert not v.reachable and v.rank_with == 4 and v.rank_without == 3

    def test_zero(self):
        S = reach_basis(A_EX3, 3, 2)
        assert is_member(S, RVector([0] * 6)).reachable

    def test_dimension_mismatch_is_verdict(self):
        v = is_member(reach_basis(A_EX3, 3, 1), RVector([1, 2, 3]))
        assert not v.reachable and v.diagnostic and v.rank_with is None

    @settings(max_examples=60)
    @given(matrices(max_dim=4), st.integers(1, 4), st.integers(0, 2), st.data())
    def test_against_linear_solve(self, A, p, t, data):
        imgs = reach_images(A, p, t)
        S = Subspace.span(imgs)
        x = data.draw(vectors(dim=S.ambient))
        assert is_member(S, x).reachable == sym_in_span(imgs, x)

    @settings(max_examples=40)
    @given(matrices(max_dim=4), st.integers(1, 4), st.integers(0, 2), st.data())
    def test_linear_space(self, A, p, t, data):
        S = reach_basis(A, p, t)
        cs = data.draw(st.lists(rationals, min_size=2 * len(S.basis), max_size=2 * len(S.basis)))
        zero = RVector([0] * S.ambient)
        u = sum((b.scale(c) for b, c in zip(S.basis, cs)), zero)
        v = sum((b.scale(c) for b, c in zip(S.basis, cs[len(S.basis):])), zero)
        a, b = data.draw(rationals), data.draw(rationals)
        assert is_member(S, u.scale(a) + v.scale(b)).reachable


class TestScan:
    def test_y1(self):
        assert scan_reachability(A_EX3, 3, Y1, 2) == {1, 2}

    def test_y3(self):
        assert scan_reachability(A_EX3, 3, Y3, 2) == {1}

    def test_never_dimension(self):
        assert scan_reachability(A_EX3, 3, RVector([1] * 5), 4) == set()

    def test_y2(self):
        assert scan_reachability(A_EX3, 3, Y2, 2) == {2}


class TestInducedMatrix:
    def test_column_one(self):
        M = induced_matrix(A_EX3, 6)
        assert M.column(0) == RVector([1, 1, 0, 0, 0, 0])
        assert M.column(0) == vprod(A_EX3, delta(6, 1))

    def test_square(self):
        A = RMatrix([[1, 2], [3, 4]])
        assert induced_matrix(A, 2) == A

    def test_not_invariant(self):
        with pytest.raises(PreconditionError, match="column 1"):
            induced_matrix(A_EX3, 3)

    @given(vectors(dim=6))
    def test_acts_like_vprod(self, x):
        assert induced_matrix(A_EX3, 6) @ x == vprod(A_EX3, x)

    def test_post_invariant_step(self):
        M = induced_matrix(A_EX3, 6)
        t0 = minimal_invariant_time(2, 2, 3)
        for t in range(t0, t0 + 4):
            assert reach_basis(A_EX3, 3, t + 1) == subspace_image(M, reach_basis(A_EX3, 3, t))


class TestRelate:
    def test_ex3_r1_r2(self):
        rel = subspace_relate(reach_basis(A_EX3, 3, 1), reach_basis(A_EX3, 3, 2))
        assert rel.relation == "incomparable" and rel.intersection_dim >= 1

    def test_equal(self):
        S = reach_basis(A_EX3, 3, 1)
        assert subspace_relate(S, S).relation == "equal"

    def test_subset_of_full(self):
        rel = subspace_relate(reach_basis(A_EX3, 3, 1), Subspace.full(6))
        assert rel.relation == "subset" and rel.intersection_dim == 3
        assert subspace_relate(Subspace.full(6), reach_basis(A_EX3, 3, 1)).relation == "superset"

    def test_ambient_mismatch(self):
        with pytest.raises(DimensionError):
            subspace_relate(Subspace.full(3), Subspace.full(6))


class TestUnbounded:
    # 2x3: 2 does not divide 3, dimensions grow without bound
    B = RMatrix([[1, 2, 0], [0, 1, -1]])

    def test_basis_and_membership(self):
        for t in range(4):
            imgs = reach_images(self.B, 2, t)
            S = reach_basis(self.B, 2, t)
            assert S.dim == sym_rank(imgs)
            for i, img in enumerate(imgs):
                assert is_member(S, img).reachable
            probe = RVector(range(1, S.ambient + 1))
            assert is_member(S, probe).reachable == sym_in_span(imgs, probe)

    def test_dims_grow(self):
        assert [reach_basis(self.B, 2, t).ambient for t in range(4)] == [2, 4, 8, 16]


def test_coordinates(Ad3):
    S = Subspace.span(Ad3)
    c = coordinates(S, Y1)
    assert c is not None
    assert sum((b.scale(x) for b, x in zip(S.basis, c)), RVector([0] * 6)) == Y1
