from fractions import Fraction

import pytest

from famalg.quiverpath import (
    CutoffExceeded,
    MalformedRelation,
    Path,
    Quiver,
    b_arrow,
    build_oracle,
    c_arrow,
    green_quiver,
    kk_quiver,
    path_vector,
    trivial,
    two_vertex_quiver,
)


def one(path):
    return {path: Fraction(1)}


def test_quiver_rejects_loops():
    with pytest.raises(ValueError):
        Quiver(2, ((0, 0, 0),))


def test_kronecker_dimension():
    for n in range(1, 9):
        q = two_vertex_quiver(n, 0)
        o = build_oracle(q, [], cutoff=3)
        assert o.dim == n + 2


def test_green_2_basis():
    q, rels = green_quiver(2)
    o = build_oracle(q, rels, cutoff=6)
    assert o.dim == 5
    words = {p.arrows for p in o.basis}
    b1, c1 = b_arrow(q, 1, 1), c_arrow(q, 1)
    assert words == {(), (c1,), (b1,), (b1, c1)}


def test_green_3_dimension():
    q, rels = green_quiver(3)
    o = build_oracle(q, rels, cutoff=8)
    assert o.dim == 8


def test_green_quiver_shapes():
    q1, r1 = green_quiver(1)
    assert len(q1.arrows) == 1 and not r1
    q2, r2 = green_quiver(2)
    assert len(q2.arrows) == 2 and len(r2) == 1
    q5, r5 = green_quiver(5)
    # Q_{3,2}: relations b1c2, b1c3, b2c3 and c1b1, c1b2, c2b2
    assert len(q5.arrows) == 5
    assert len(r5) == 6


def test_multiply_idempotents_and_arrows():
    q, rels = green_quiver(2)
    o = build_oracle(q, rels, cutoff=6)
    b1 = Path((b_arrow(q, 1, 1),))
    c1 = Path((c_arrow(q, 1),))
    e1, e2 = trivial(0), trivial(1)
    assert o.multiply(one(e1), one(e1)) == one(e1)
    # c1 b1 is a relation
    assert o.multiply(one(c1), one(b1)) == {}
    # b1 c1 survives
    assert o.multiply(one(b1), one(c1)) == one(Path((b_arrow(q, 1, 1), c_arrow(q, 1))))
    # one-sided identities
    assert o.multiply(one(e1), one(b1)) == one(b1)
    assert o.multiply(one(b1), one(e2)) == one(b1)
    assert o.multiply(one(e2), one(b1)) == {}


def test_kk_relation_families():
    q, rels = kk_quiver(1)
    lengths = sorted(len(next(iter(r)).arrows) for r in rels)
    assert lengths == [2, 3]  # b1c1 and b1c1b1

    q2, rels2 = kk_quiver(2)
    by_len = {}
    for r in rels2:
        by_len.setdefault(len(next(iter(r)).arrows), []).append(r)
    assert len(by_len[3]) == 8
    assert len(by_len[2]) == 4  # b1c1, b2c2, c1b2, c2b1-c1b1


def test_kk_radical_fourth_power_vanishes():
    for n in (2, 3):
        q, rels = kk_quiver(n)
        o = build_oracle(q, rels, cutoff=2 * n + 4)
        assert all(len(p.arrows) < 4 for p in o.basis)
        assert any(len(p.arrows) == 3 for p in o.basis)


def test_relations_reduce_to_zero():
    for builder, arg in ((green_quiver, 4), (kk_quiver, 2)):
        q, rels = builder(arg)
        o = build_oracle(q, rels, cutoff=10)
        assert o.check_relations_vanish()


def test_associativity_exhaustive_small():
    for builder, arg in ((green_quiver, 3), (green_quiver, 4), (kk_quiver, 2)):
        q, rels = builder(arg)
        o = build_oracle(q, rels, cutoff=12)
        assert o.check_associativity()


def test_cutoff_exceeded_on_free_loop():
    # Q_{1,1} with no relations has paths of every length
    q = two_vertex_quiver(1, 1)
    with pytest.raises(CutoffExceeded):
        build_oracle(q, [], cutoff=5)


def test_malformed_relation_rejected():
    q = two_vertex_quiver(1, 1)
    # length-1 "relation"
    with pytest.raises(MalformedRelation):
        build_oracle(q, [one(Path((0,)))], cutoff=4)
    # mixed source/target
    bad = path_vector([(1, Path((1, 0))), (1, Path((0, 1)))])
    with pytest.raises(MalformedRelation):
        build_oracle(q, [bad], cutoff=4)


def test_normal_forms_prefer_lex_smallest():
    # relation c2 b - c1 b identifies two words; the lex-smaller one survives
    q = two_vertex_quiver(2, 1)
    b1 = b_arrow(q, 2, 1)
    rels = [
        path_vector([(1, Path((1, b1))), (-1, Path((0, b1)))]),
        one(Path((b1, 0))),
        one(Path((b1, 1))),
    ]
    o = build_oracle(q, rels, cutoff=6)
    assert o.dim == 6
    survivors = {p.arrows for p in o.basis if len(p.arrows) == 2}
    assert survivors == {(0, b1)}
    # the reduced word maps onto the surviving representative
    assert o.reduce(one(Path((1, b1)))) == one(Path((0, b1)))


def test_reduce_general_vector():
    q, rels = green_quiver(2)
    o = build_oracle(q, rels, cutoff=6)
    c1, b1 = c_arrow(q, 1), b_arrow(q, 1, 1)
    vec = path_vector([(2, Path((c1, b1))), (3, Path((b1, c1)))])
    assert o.reduce(vec) == {Path((b1, c1)): Fraction(3)}
