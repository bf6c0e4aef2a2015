from fractions import Fraction

import pytest

from famalg.family import Family, green_family, kk_family, random_family
from famalg.quiverpath import build_oracle, green_quiver
from famalg.ralgebra import (
    algebra_from_oracle,
    apply_grading,
    build_R,
    cartan_matrix,
    chi_zero,
    family_oracle,
    predicted_component_dims,
    verify_against_oracle,
)


def kronecker_family(n):
    return Family(n, ())


def test_empty_family_gives_kronecker():
    for n in (1, 2, 3, 5):
        a = build_R(kronecker_family(n))
        assert a.dim == n + 2
        assert cartan_matrix(a) == [[1, 0], [n, 1]]


def test_equidimensional_dimension_4_plus_4m():
    for m in (1, 2, 3):
        f = random_family(2, m, [1] * m, seed=60 + m)
        a = build_R(f)
        assert a.dim == 4 + 4 * m


def test_equidimensional_middle_components_vanish():
    f = random_family(3, 3, [2, 2, 2], seed=17)
    a = build_R(f)
    for (u, P), d in a.component_dims().items():
        if len(P) >= 2:
            assert u != len(P) - 1  # (s-1; P) components are empty
    assert a.dim == 2 + 3 + 3 * (1 + 2 + 1 + 2)


def test_green2_matches_oracle_dimension():
    a = build_R(green_family(2))
    q, rels = green_quiver(2)
    o = build_oracle(q, rels, cutoff=6)
    assert a.dim == o.dim == 5


def test_green_dims_match_green_quiver():
    for l in (3, 4, 5, 6):
        a = build_R(green_family(l))
        q, rels = green_quiver(l)
        o = build_oracle(q, rels, cutoff=2 * (l // 2) + 4)
        assert a.dim == o.dim


def test_component_dims_match_formulas():
    for f in (green_family(5), kk_family(2), random_family(3, 2, [2, 1], seed=8)):
        a = build_R(f)
        assert a.component_dims() == predicted_component_dims(f)


def test_build_R_unital_associative():
    for f in (kronecker_family(2), green_family(4), kk_family(2), random_family(3, 2, [2, 1], seed=1)):
        a = build_R(f)
        assert a.check_unital()
        assert a.check_associativity()
        assert a.check_mdeg_additivity()


def test_verify_against_oracle_empty():
    rep = verify_against_oracle(kronecker_family(2))
    assert rep.ok


def test_verify_against_oracle_kk2():
    rep = verify_against_oracle(kk_family(2))
    assert rep.ok
    assert rep.dim_closed == 12


def test_verify_against_oracle_random():
    rep = verify_against_oracle(random_family(3, 2, [2, 1], seed=7))
    assert rep.ok


def test_apply_grading_trivial():
    a = apply_grading(build_R(green_family(4)), [0, 0, 0])
    assert set(a.zdegrees()) == {0}


def test_apply_grading_chi0():
    f = random_family(2, 2, [1, 1], seed=2)
    a = apply_grading(build_R(f), chi_zero(2))
    for b in a.basis:
        assert b.zdeg == len(b.P)
    assert a.check_zdeg_additivity()


def test_apply_grading_counts_letters():
    f = random_family(2, 2, [1, 1], seed=2)
    a = apply_grading(build_R(f), [1, 0, 0])
    for b in a.basis:
        assert b.zdeg == b.u


def test_apply_grading_m_mismatch():
    with pytest.raises(ValueError):
        apply_grading(build_R(green_family(4)), [0, 1])


def test_cartan_equidimensional_m1():
    # brute-force count over the 8 basis words, det must be +-1
    f = random_family(2, 1, [1], seed=4)
    a = build_R(f)
    assert a.dim == 8
    c = cartan_matrix(a)
    assert c == [[2, 1], [3, 2]]
    assert c[0][0] * c[1][1] - c[0][1] * c[1][0] in (1, -1)


def test_algebra_from_oracle_round_trip():
    o = family_oracle(kk_family(2))
    a = algebra_from_oracle(o)
    assert a.dim == o.dim == 12
    assert a.check_unital()
    assert a.check_associativity()


def test_dump_deterministic():
    f = kk_family(2)
    assert build_R(f).to_json() == build_R(f).to_json()
