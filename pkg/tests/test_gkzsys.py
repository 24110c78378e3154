from fractions import Fraction

import pytest

from gkz import catalog
from gkz.errors import BadLabel, EmptyBlock, LatticeNotFull, NotInKernel, ShapeError
from gkz.gkzsys import (
    BoxOperator,
    EulerOperator,
    as_parameter,
    block_weight,
    build_system,
    cayley_matrix,
    operators,
    parameter_is_exact,
    partition_simplex,
)


def test_parameter_parsing():
    c = as_parameter([1, "2/3", Fraction(-1, 5)])
    assert c == (Fraction(1), Fraction(2, 3), Fraction(-1, 5))
    assert parameter_is_exact(c)
    z = as_parameter([0.5, [0.25, -1.0]])
    assert z == (0.5 + 0j, 0.25 - 1j)
    assert not parameter_is_exact(z)


def test_build_system_defaults_and_labels():
    s = build_system([[1, 1, 1], [0, 1, 2]])
    assert s.labels == (0, 1, 2) and s.parameter == (0, 0)
    s = build_system([[1, 0, -1], [0, 2, 3]], ["1/3", "1/5"], labels="abc")
    assert s.position("c") == 2 and s.label_of([0, 2]) == ("a", "c")
    with pytest.raises(BadLabel):
        s.position("z")


def test_lattice_must_be_full():
    with pytest.raises(LatticeNotFull):
        build_system([[2, 0], [0, 2]])
    with pytest.raises(LatticeNotFull):
        build_system([[1, 1, 1], [0, 2, 4]])


def test_bad_shapes():
    with pytest.raises(ShapeError):
        build_system([[1, 0], [0]])
    with pytest.raises(ShapeError):
        build_system([[1, 0], [0, 1]], [1, 2, 3])
    with pytest.raises(ShapeError):
        build_system([[1, 0.5], [0, 1]])


def test_operators():
    spec = catalog.two_simplex_system()
    ops = operators(spec, [(2, -3, 2)])
    eulers = [o for o in ops if isinstance(o, EulerOperator)]
    boxes = [o for o in ops if isinstance(o, BoxOperator)]
    assert len(eulers) == 2 and eulers[1].coefficients == (0, 2, 3)
    assert boxes[0].u_plus == (2, 0, 2) and boxes[0].u_minus == (0, 3, 0)
    with pytest.raises(NotInKernel):
        operators(spec, [(1, 1, 1)])


def test_cayley_matrix_shape():
    cs = catalog.grassmannian_cayley()
    A = [list(r) for r in cs.assembled]
    assert len(A) == 5 and len(A[0]) == 9
    assert A[:3] == [[1, 1, 1, 0, 0, 0, 0, 0, 0], [0, 0, 0, 1, 1, 1, 0, 0, 0], [0, 0, 0, 0, 0, 0, 1, 1, 1]]
    assert A[3] == [0, 1, 0] * 3 and A[4] == [0, 0, 1] * 3
    assert cs.block_of(4) == 2 and not cs.has_A0


def test_cayley_with_exponential_block():
    cs = cayley_matrix([[[1, 2]]], A0=[[1]])
    assert cs.has_A0 and cs.index_sets == ((0,), (1, 2))
    assert [list(r) for r in cs.assembled] == [[0, 1, 1], [1, 1, 2]]
    assert cs.block_of(0) == 0


def test_partition_triangular_form():
    cs = catalog.grassmannian_cayley()
    spec = catalog.grassmannian_system()
    sigma = [spec.position(x) for x in catalog.GRASSMANNIAN_SIMPLEX]
    part = partition_simplex(cs, sigma)
    assert part.sigma0 == (1, 3, 6)
    k = cs.k
    tri = part.triangular
    for i in range(k, len(tri)):
        assert all(tri[i][j] == 0 for j in range(k))
    assert [r[:k] for r in tri[:k]] == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    with pytest.raises(BadLabel):
        partition_simplex(cs, sigma, sigma0=(1, 3, 3))


def test_partition_needs_every_block():
    cs = catalog.grassmannian_cayley()
    with pytest.raises(EmptyBlock):
        partition_simplex(cs, [0, 1, 2, 3, 4])


def test_block_weight_is_the_indicator_parameter():
    cs = catalog.residue_cayley()
    # sigma = {0,1,2}: one block, weight 1 for each of its columns
    for j in (0, 1, 2, 3):
        assert block_weight(cs, (0, 1, 2), 1, j) == 1
    g = catalog.grassmannian_cayley()
    sigma = (1, 3, 4, 5, 6)
    for j in range(9):
        for l in (1, 2, 3):
            assert block_weight(g, sigma, l, j) == int(g.block_of(j) == l)
