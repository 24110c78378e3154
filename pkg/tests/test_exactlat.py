from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gkz.errors import RankDeficient, ShapeError
from gkz.exactlat import (
    QuotientGroup,
    determinant,
    lattice_kernel,
    lattice_member,
    matmul,
    matvec,
    pairing,
    rank,
    rational_inverse,
    smith_normal_form,
    transpose,
)

square = st.integers(2, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n)
)
rect = st.tuples(st.integers(1, 3), st.integers(1, 5)).flatmap(
    lambda s: st.lists(st.lists(st.integers(-6, 6), min_size=s[1], max_size=s[1]), min_size=s[0], max_size=s[0])
)


def test_snf_small_example():
    s = smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    assert s.diagonal == [2, 6, 12]


def test_kernel_of_two_simplex_matrix():
    assert lattice_kernel([[1, 0, -1], [0, 2, 3]]) == [(2, -3, 2)]


def test_residue_kernel():
    ker = lattice_kernel([[1, 1, 1, 1], [0, 1, 0, -1], [0, 0, 2, 3]])
    assert len(ker) == 1 and tuple(abs(x) for x in ker[0]) == (1, 2, 3, 2)


@settings(max_examples=150, deadline=None)
@given(rect)
def test_snf_identities(M):
    s = smith_normal_form(M)
    assert matmul(matmul(s.P, M), s.Q) == s.D
    assert abs(determinant(s.P)) == 1 and abs(determinant(s.Q)) == 1
    d = s.diagonal
    for a, b in zip(d, d[1:]):
        assert b % a == 0 if a else b == 0
    assert s.rank == rank(M)


@settings(max_examples=100, deadline=None)
@given(rect)
def test_kernel_vectors_are_a_saturated_basis(M):
    ker = lattice_kernel(M)
    assert len(ker) == len(M[0]) - rank(M)
    for u in ker:
        assert not any(matvec(M, list(u)))
    if ker:  # saturated: the Smith form of the kernel basis is all ones
        assert all(x == 1 for x in smith_normal_form([list(u) for u in ker]).diagonal)


@settings(max_examples=60, deadline=None)
@given(square)
def test_quotient_group_order_and_classes(B):
    d = determinant(B)
    if d == 0:
        with pytest.raises(RankDeficient):
            QuotientGroup(B)
        return
    if abs(d) > 60:
        return
    G = QuotientGroup(B)
    assert G.order == abs(d)
    elems = list(G.elements())
    assert len(set(elems)) == abs(d)
    for f in elems:
        w = G.lift(f)
        assert G.canonical_form(w) == f
        # adding a column of B does not change the class
        assert G.same_class(w, [a + b for a, b in zip(w, transpose(B)[0])])


def test_lattice_member():
    B = [[2, 0], [0, 3]]
    assert lattice_member(B, [4, -3])
    assert not lattice_member(B, [1, 0])


def test_rational_inverse_and_shape_errors():
    inv = rational_inverse([[1, 0], [0, 2]])
    assert inv == [[1, 0], [0, Fraction(1, 2)]]
    with pytest.raises(ShapeError):
        QuotientGroup([[1, 2, 3]])


@settings(max_examples=40, deadline=None)
@given(square)
def test_pairing_is_well_defined_and_nondegenerate(B):
    d = determinant(B)
    if d == 0 or abs(d) > 12:
        return
    inv = rational_inverse(B)
    n = len(B)
    G, H = QuotientGroup(B), QuotientGroup(transpose(B))
    ws = [G.lift(f) for f in G.elements()]
    vs = [H.lift(f) for f in H.elements()]
    for v, w in product(vs, ws):
        p = pairing(v, w, B, inv)
        assert 0 <= p < 1
        # invariant under w -> w + B e_0 and v -> v + B^T e_0
        w2 = [a + B[i][0] for i, a in enumerate(w)]
        v2 = [a + B[0][i] for i, a in enumerate(v)]
        assert pairing(v2, w2, B, inv) == p
    for v in vs:
        if H.canonical_form(v) != H.canonical_form([0] * n):
            assert any(pairing(v, w, B, inv) != 0 for w in ws)
