import random
from fractions import Fraction

import pytest

from famalg.exactla import (
    Matrix,
    Subspace,
    coordinate_complement,
    intersect,
    kernel_basis,
    projection_along,
    random_subspace,
    rref,
    subspace_sum,
)


def M(rows):
    return Matrix.from_rows(rows)


def S(ambient, *vectors):
    return Subspace.from_vectors(ambient, list(vectors))


def test_rref_identity():
    red, rank = rref(Matrix.identity(2))
    assert red == Matrix.identity(2)
    assert rank == 2


def test_rref_rank_one():
    red, rank = rref(M([[1, 2], [2, 4]]))
    assert rank == 1
    assert red.row_list() == [[1, 2], [0, 0]]


def test_rref_rank_two_hand_checked():
    _, rank = rref(M([[0, 1, 1], [1, 0, 1], [1, 1, 2]]))
    assert rank == 2


def test_rref_idempotent_and_rank_preserving_random():
    rng = random.Random(7)
    for _ in range(25):
        rows = rng.randint(1, 5)
        cols = rng.randint(1, 5)
        m = M([[rng.randint(-4, 4) for _ in range(cols)] for _ in range(rows)])
        red, rank = rref(m)
        red2, rank2 = rref(red)
        assert red2 == red
        assert rank2 == rank


def test_intersect_idempotent():
    u = S(3, [1, 0, 2], [0, 1, 1])
    assert intersect(u, u) == u


def test_intersect_transverse_lines():
    u = S(2, [1, 0])
    w = S(2, [0, 1])
    assert intersect(u, w) == Subspace.zero(2)


def test_intersect_planes_hand_checked():
    u = S(3, [1, 0, 0], [0, 1, 0])
    w = S(3, [0, 1, 0], [0, 0, 1])
    assert intersect(u, w) == S(3, [0, 1, 0])


def test_intersect_ambient_mismatch():
    with pytest.raises(ValueError):
        intersect(S(2, [1, 0]), S(3, [1, 0, 0]))


def test_sum_with_zero():
    u = S(3, [1, 2, 3])
    assert subspace_sum(u, Subspace.zero(3)) == u


def test_sum_spans_plane():
    assert subspace_sum(S(2, [1, 0]), S(2, [0, 1])) == Subspace.full(2)


def test_sum_rank_of_stacked_basis():
    v = S(3, [1, 1, 0])
    w = S(3, [1, 0, 0], [0, 0, 1])
    assert subspace_sum(v, w) == Subspace.full(3)


def test_dimension_formula_random():
    rng = random.Random(11)
    for trial in range(20):
        n = rng.randint(1, 5)
        u = random_subspace(n, rng.randint(0, n), seed=100 + trial)
        w = random_subspace(n, rng.randint(0, n), seed=200 + trial)
        total = subspace_sum(u, w)
        meet = intersect(u, w)
        assert total.dim + meet.dim == u.dim + w.dim


def test_coordinate_complement_full():
    assert coordinate_complement(Subspace.full(4)) == Subspace.zero(4)


def test_coordinate_complement_line():
    assert coordinate_complement(S(2, [1, 0])) == S(2, [0, 1])


def test_coordinate_complement_nonpivot_column():
    u = S(3, [1, 2, 0], [0, 0, 1])
    assert coordinate_complement(u) == S(3, [0, 1, 0])


def test_complement_gives_direct_sum():
    rng = random.Random(3)
    for trial in range(20):
        n = rng.randint(1, 5)
        u = random_subspace(n, rng.randint(0, n), seed=300 + trial)
        t = coordinate_complement(u)
        assert u.dim + t.dim == n
        assert subspace_sum(u, t) == Subspace.full(n)


def test_projection_zero_kernel_is_identity():
    p = projection_along(Subspace.zero(3), Subspace.full(3))
    assert p == Matrix.identity(3)


def test_projection_coordinate_case():
    p = projection_along(S(2, [1, 0]), S(2, [0, 1]))
    assert p.row_list() == [[0, 1]]


def test_projection_skew_case():
    # kernel span{(1,1)}, image span{(1,0)}: (a,b) = b*(1,1) + (a-b)*(1,0)
    p = projection_along(S(2, [1, 1]), S(2, [1, 0]))
    assert p.row_list() == [[1, -1]]


def test_projection_identity_on_complement():
    rng = random.Random(5)
    for trial in range(20):
        n = rng.randint(1, 5)
        u = random_subspace(n, rng.randint(0, n), seed=400 + trial)
        t = coordinate_complement(u)
        p = projection_along(u, t)
        for v in t.vectors():
            coords = p.apply(v)
            rebuilt = [Fraction(0)] * n
            for c, basis_vec in zip(coords, t.vectors()):
                rebuilt = [x + c * y for x, y in zip(rebuilt, basis_vec)]
            assert rebuilt == [Fraction(x) for x in v]
        for v in u.vectors():
            assert p.apply(v) == [Fraction(0)] * t.dim


def test_projection_requires_direct_sum():
    with pytest.raises(ValueError):
        projection_along(S(2, [1, 0]), S(2, [1, 0]))


def test_random_subspace_extremes():
    assert random_subspace(3, 0, seed=1) == Subspace.zero(3)
    assert random_subspace(3, 3, seed=9) == Subspace.full(3)


def test_random_subspace_deterministic():
    a = random_subspace(2, 1, seed=12345)
    b = random_subspace(2, 1, seed=12345)
    assert a == b
    assert a.dim == 1


def test_random_subspace_rejects_bad_dim():
    with pytest.raises(ValueError):
        random_subspace(2, 3, seed=0)


def test_kernel_basis_solves():
    m = M([[1, 2, 3], [0, 1, 1]])
    for v in kernel_basis(m):
        assert m.apply(v) == [Fraction(0)] * 2
