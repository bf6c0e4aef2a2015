from fractions import Fraction

import pytest

from famalg.dcat import (
    build_D,
    build_P1_P2_K,
    endomorphism_cohomology,
    exceptionality_suite,
    expected_chi,
    hom_complex,
    projectives,
)
from famalg.family import green_family, random_family


def nodal(m, seed=11):
    return random_family(2, m, [1] * m, seed=seed)


def test_build_D_dimension_m1():
    d = build_D(nodal(1), [0])
    # 3 idempotents + 2 c's + beta + phi + one path class each through beta, phi
    assert d.algebra.dim == 9


def test_build_D_requires_equidimensional():
    with pytest.raises(ValueError):
        build_D(green_family(5), [0, 0])


def test_block_dims_match_expected_table():
    f = random_family(3, 2, [2, 2], seed=5)
    d = build_D(f, [0, 1])
    n, k = 3, 2
    for i in (1, 2):
        li = 1 + i
        delta = d.delta[i - 1]
        bd = d.block_dims(1, li)
        assert sum(bd.values()) == 1 + k
        bd = d.block_dims(0, li)
        assert sum(bd.values()) == (n - k) + 1
        assert bd.get(delta, 0) >= 1
    assert d.block_dims(0, 1) == {0: n}


def test_relations_hold_in_D():
    f = random_family(3, 1, [2], seed=9)
    d = build_D(f, [0])
    v = f.V(1).vectors()
    w = f.W(1).vectors()
    for row in v:
        assert d.algebra.multiply(d.beta(1), d.c_vector(row)) == {}
    for j in (1, 2):
        for row in w:
            assert d.algebra.multiply(d.phi(1, j), d.c_vector(row)) == {}
    # phi_j v_l = 0 for l != j; phi_j v_j all agree
    assert d.algebra.multiply(d.phi(1, 1), d.c_vector(v[1])) == {}
    assert d.algebra.multiply(d.phi(1, 2), d.c_vector(v[0])) == {}
    t1 = d.algebra.multiply(d.phi(1, 1), d.c_vector(v[0]))
    t2 = d.algebra.multiply(d.phi(1, 2), d.c_vector(v[1]))
    assert t1 == t2 != {}


def test_complex_shapes_and_square_zero():
    f = nodal(2)
    d = build_D(f, [0, 0])
    p1, p2, ks = build_P1_P2_K(d)
    assert len(p1.summands) == d.m + 1
    assert len(p2.summands) == d.m * d.k + 1
    for cx in [p1, p2] + ks:
        assert cx.check_square_zero()
        assert cx.check_degree_rule()
        assert cx.check_strictly_triangular()


def test_beta_eta_composition_vanishes():
    f = random_family(3, 2, [2, 2], seed=5)
    d = build_D(f, [0, 1])
    for i in (1, 2):
        for row in f.V(i).vectors():
            assert d.algebra.multiply(d.beta(i), d.c_vector(row)) == {}


def test_hom_identity_projectives():
    d = build_D(nodal(2), [0, 0])
    qs = projectives(d)
    for q in qs:
        rep = hom_complex(q, q)
        assert rep.cohomology_dims == {0: 1}


def test_q_orthogonality():
    d = build_D(nodal(2), [0, 0])
    qs = projectives(d)
    assert hom_complex(qs[2], qs[3]).complex_dims == {}
    assert hom_complex(qs[2], qs[1]).complex_dims == {}


def test_K_self_cohomology_is_k():
    d = build_D(nodal(2), [0, 0])
    _, _, ks = build_P1_P2_K(d)
    for k in ks:
        rep = hom_complex(k, k)
        assert rep.cohomology_dims == {0: 1}
        assert rep.euler_consistent


def test_K_pair_dims_match_derivation():
    # Hom(K_i, K_j) splits into degrees {0: k^2+1+[i==j], 1: kn+1, 2: k(n-k)}
    # plus {delta_j+1: k, delta_j+2: k}
    f = random_family(3, 2, [2, 2], seed=5)
    n, k = 3, 2
    d = build_D(f, [0, 0])
    _, _, ks = build_P1_P2_K(d)
    rep = hom_complex(ks[0], ks[1])
    assert rep.complex_dims == {
        0: k * k + 1,
        1: k * n + 1 + k,
        2: k * (n - k) + k,
    }
    rep_self = hom_complex(ks[0], ks[0])
    assert rep_self.complex_dims[0] == k * k + 2


def test_backward_K_morphisms_vanish():
    d = build_D(nodal(3, seed=23), [0, 0, 0])
    _, _, ks = build_P1_P2_K(d)
    for i in range(3):
        for j in range(3):
            if i > j:
                assert hom_complex(ks[i], ks[j]).cohomology_dims == {}


def test_P_orthogonal_to_K():
    d = build_D(nodal(2, seed=31), [0, 0])
    p1, p2, ks = build_P1_P2_K(d)
    for k in ks:
        assert hom_complex(p1, k).acyclic
        assert hom_complex(p2, k).acyclic


def test_exceptionality_suite_nodal():
    d = build_D(nodal(3, seed=23), [0, 0, 0])
    report = exceptionality_suite(d)
    assert report["ok"], report["failures"]


def test_exceptionality_suite_nonzero_delta():
    d = build_D(nodal(3, seed=23), [1, 2, 3])
    report = exceptionality_suite(d)
    assert report["ok"], report["failures"]


def test_exceptionality_suite_m1():
    d = build_D(nodal(1), [0])
    assert exceptionality_suite(d)["ok"]


def test_expected_chi():
    assert expected_chi([0, 0]) == [0, 1, 1]
    assert expected_chi([1, 2]) == [0, 0, -1]


def test_endomorphism_cohomology_nodal_m1():
    d = build_D(nodal(1), [0])
    rep = endomorphism_cohomology(d)
    assert rep.ok, rep.to_dict()
    totals = {}
    for (_, p), dim in rep.cohomology_dims.items():
        totals[p] = totals.get(p, 0) + dim
    assert totals == {0: 4, 1: 4}


def test_endomorphism_cohomology_rejects_wrong_chi():
    d = build_D(nodal(1), [0])
    with pytest.raises(ValueError):
        endomorphism_cohomology(d, chi_target=[0, 5])


def test_endomorphism_cohomology_mixed_delta():
    d = build_D(nodal(2, seed=37), [1, -1])
    rep = endomorphism_cohomology(d, chi_target=[0, 0, 2])
    assert rep.ok, rep.to_dict()


def test_endomorphism_cohomology_k2():
    f = random_family(3, 2, [2, 2], seed=5)
    d = build_D(f, [0, 1])
    rep = endomorphism_cohomology(d)
    assert rep.ok, rep.to_dict()
