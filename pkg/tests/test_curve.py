from fractions import Fraction

import pytest

from famalg.exactla import Subspace
from famalg.family import Family, random_family
from famalg.curve import (
    P1Point,
    build_graph,
    coordinate_ring_basis,
    curve_report,
    forest_lambda_consistency,
    is_modest,
    lambda_matrix,
    lambda_rank,
    line_to_point,
    spanning_forest_reduce,
)


def line(a, b):
    return Subspace.from_vectors(2, [[a, b]])


def pair_family(*pairs):
    return Family(2, tuple((line(*v), line(*w)) for v, w in pairs))


def test_line_to_point_normalization():
    assert line_to_point(line(1, 0)) == P1Point(Fraction(1), Fraction(0))
    assert line_to_point(line(2, 4)) == P1Point(Fraction(1), Fraction(2))
    assert line_to_point(line(0, 7)) == P1Point(Fraction(0), Fraction(1))


def test_line_to_point_rejects_bad_input():
    with pytest.raises(ValueError):
        line_to_point(Subspace.from_vectors(3, [[1, 0, 0]]))


def test_nodal_graph():
    f = pair_family(((1, 0), (0, 1)), ((1, 1), (1, 2)))
    g = build_graph(f)
    assert len(g.vertices) == 4
    assert len(g.edges) == 2
    assert g.component_count == 2
    assert g.cycle_rank == 0
    assert is_modest(g)


def test_parallel_edges_not_modest():
    f = pair_family(((1, 0), (0, 1)), ((1, 0), (0, 1)))
    g = build_graph(f)
    assert len(g.vertices) == 2
    assert len(g.edges) == 2
    assert g.cycle_rank == 1
    assert not is_modest(g)


def test_empty_family_modest():
    f = Family(2, ())
    g = build_graph(f)
    assert g.cycle_rank == 0 and is_modest(g)
    rank, surj = lambda_rank(f)
    assert rank == 0 and surj


def test_chain_is_tree():
    # V1-point equals W2-point: a path with three vertices
    f = pair_family(((1, 0), (0, 1)), ((1, 1), (1, 0)))
    g = build_graph(f)
    assert len(g.vertices) == 3
    assert g.component_count == 1
    assert is_modest(g)
    report = curve_report(f)
    assert report["singular_count"] == 1
    assert report["singular_points"][0]["branches"] == 3
    assert report["distinct_points"] == 3


def test_lambda_nodal_m1():
    f = pair_family(((1, 2), (1, 3)))
    rank, surj = lambda_rank(f)
    assert rank == 2 and surj


def test_lambda_handles_point_at_infinity():
    f = pair_family(((1, 0), (0, 1)))
    rank, surj = lambda_rank(f)
    assert rank == 2 and surj


def test_lambda_parallel_edges_rank_deficient():
    f = pair_family(((1, 0), (0, 1)), ((1, 0), (0, 1)))
    rank, surj = lambda_rank(f)
    assert rank == 3 and not surj


def test_triangle_cycle():
    a, b, c = (1, 0), (0, 1), (1, 1)
    f = pair_family((b, a), (c, b), (c, a))
    g = build_graph(f)
    assert g.cycle_rank == 1
    assert not is_modest(g)
    reduced = spanning_forest_reduce(f)
    assert reduced.m == 2
    assert is_modest(build_graph(reduced))


def test_forest_lambda_consistency_cases():
    cases = [
        pair_family(((1, 0), (0, 1)), ((1, 1), (1, 2))),
        pair_family(((1, 0), (0, 1)), ((1, 0), (0, 1))),
        pair_family(((1, 0), (0, 1)), ((1, 1), (1, 0))),
    ]
    for f in cases:
        assert forest_lambda_consistency(f)


def test_forest_lambda_consistency_random():
    for seed in range(25):
        m = 1 + seed % 4
        f = random_family(2, m, [1] * m, seed=500 + seed)
        assert forest_lambda_consistency(f)


def test_spanning_forest_identity_on_modest():
    f = pair_family(((1, 0), (0, 1)), ((1, 1), (1, 2)))
    assert spanning_forest_reduce(f) == f


def test_spanning_forest_drops_parallel_edge():
    f = pair_family(((1, 0), (0, 1)), ((1, 0), (0, 1)))
    reduced = spanning_forest_reduce(f)
    assert reduced.m == 1
    assert reduced.pairs[0] == f.pairs[0]
    # vertex set and components survive the reduction
    g0, g1 = build_graph(f), build_graph(reduced)
    assert set(map(str, g0.vertices)) == set(map(str, g1.vertices))
    assert g0.component_count == g1.component_count


def test_coordinate_ring_dims_nodal():
    f = pair_family(((1, 2), (1, 3)))
    assert len(coordinate_ring_basis(f, 1)) == 1
    assert len(coordinate_ring_basis(f, 2)) == 2
    # rank-nullity: dim ker = d + 1 + m - rank
    for d in (1, 2, 3, 4):
        rank, _ = lambda_rank(f, d)
        assert len(coordinate_ring_basis(f, d)) == d + 1 + f.m - rank


def test_coordinate_ring_m0():
    f = Family(2, ())
    assert len(coordinate_ring_basis(f, 3)) == 4


def test_rank_monotone_and_stable():
    from famalg.exactla import rref

    f = pair_family(((1, 0), (0, 1)), ((1, 1), (1, 2)), ((1, 3), (1, 4)))
    distinct = 6
    prev = 0
    for d in range(distinct - 1, distinct + 3):
        _, rank = rref(lambda_matrix(f, d))
        assert rank >= prev
        prev = rank


def test_curve_report_nodal_m2():
    f = pair_family(((1, 0), (0, 1)), ((1, 1), (1, 2)))
    report = curve_report(f)
    assert report["singular_count"] == 2
    assert all(s["branches"] == 2 for s in report["singular_points"])
    assert report["distinct_points"] == 4
    assert report["modest"] and report["lambda_surjective"]
    assert report["c_bound_ok"]


def test_curve_report_smooth_m0():
    report = curve_report(Family(2, ()))
    assert report["singular_count"] == 0
    assert report["modest"]


def test_graph_requires_line_family():
    with pytest.raises(ValueError):
        build_graph(random_family(3, 1, [1], seed=1))
