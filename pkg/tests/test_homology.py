from fractions import Fraction

import pytest

from famalg.family import Family, green_family, kk_family, random_family
from famalg.homology import (
    euler_characteristic_consistent,
    gldim,
    loewy_length,
    minimal_resolution,
    projective_module,
    resolution_report,
    simple_module,
    simples_and_projectives,
)
from famalg.quiverpath import Path, build_oracle, two_vertex_quiver
from famalg.ralgebra import algebra_from_oracle, build_R, family_oracle
from famalg.twist import semisimple_algebra


def kronecker(n):
    return build_R(Family(n, ()))


def test_projective_dims_kronecker():
    a = kronecker(3)
    s1, s2, p1, p2 = simples_and_projectives(a)
    assert p1.dim == 1
    assert p2.dim == 4
    assert s1.dim == s2.dim == 1


def test_module_action_consistency():
    a = kronecker(2)
    _, _, p1, p2 = simples_and_projectives(a)
    for mod in (p1, p2):
        assert mod.check_unit_action()
        assert mod.check_action_respects_products()


def test_semisimple_resolutions():
    s = semisimple_algebra(2)
    assert gldim(s) == 0
    assert loewy_length(s) == 1


def test_kronecker_hereditary():
    for n in (1, 2, 4):
        a = kronecker(n)
        assert gldim(a) == 1
        assert loewy_length(a) == 2


def test_green_projective_dims_sum():
    a = build_R(green_family(2))
    _, _, p1, p2 = simples_and_projectives(a)
    assert p1.dim + p2.dim == 5


def test_green_3_gldim():
    assert gldim(build_R(green_family(3))) == 3


def test_green_gldim_small():
    for l in (2, 4, 5):
        assert gldim(build_R(green_family(l))) == l


def test_kk2_gldim_and_loewy():
    a = build_R(kk_family(2))
    assert gldim(a) == 5
    assert loewy_length(a) == 4


def test_random_families_finite_gldim():
    for seed in (1, 2, 3):
        f = random_family(3, 2, [2, 1], seed=seed)
        g = gldim(build_R(f))
        assert isinstance(g, int)


def test_euler_characteristic():
    for alg in (kronecker(2), build_R(green_family(4)), build_R(kk_family(2))):
        report = resolution_report(alg)
        assert euler_characteristic_consistent(alg, report)


def test_resolution_minimality_flag():
    report = resolution_report(build_R(green_family(5)))
    assert all(e.minimal for e in report.entries)
    assert report.gldim == 5


def test_infinite_gldim_reports_cutoff():
    # radical-square-zero two-cycle: resolutions never terminate
    q = two_vertex_quiver(1, 1)
    rels = [{Path((0, 1)): Fraction(1)}, {Path((1, 0)): Fraction(1)}]
    a = algebra_from_oracle(build_oracle(q, rels, cutoff=4))
    assert gldim(a, cutoff=6) == ">= 6"


def test_oracle_copy_same_betti():
    f = kk_family(2)
    direct = build_R(f)
    copy = algebra_from_oracle(family_oracle(f))
    rep_a = resolution_report(direct)
    rep_b = resolution_report(copy)
    assert rep_a.gldim == rep_b.gldim
    for ea, eb in zip(rep_a.entries, rep_b.entries):
        assert ea.length == eb.length
        assert {tuple(map(tuple, ea.betti)), } == {tuple(map(tuple, eb.betti)), }


def test_simple_resolution_entry_shape():
    a = kronecker(2)
    entry = minimal_resolution(a, simple_module(a, 1), cutoff=5)
    assert entry.length == 1
    assert entry.betti[0] == [0, 1]  # S_2 covered by P_2
    assert entry.betti[1] == [2, 0]  # kernel is two copies of P_1
