from fractions import Fraction

import pytest

from famalg.exactla import Subspace
from famalg.family import Family, green_family, kk_family, random_family
from famalg.quiverpath import build_oracle, green_quiver
from famalg.ralgebra import build_R, chi_zero
from famalg.twist import (
    RingOverR,
    _semisimple_ring,
    arrow_algebra,
    balanced_tensor,
    build_kvb,
    factorize_R,
    generalized_green,
    k1_op_algebra,
    kronecker_algebra,
    left_projectivity_check,
    semisimple_algebra,
    twisted_product,
    v_twist,
)


def line(n, *coords):
    return Subspace.from_vectors(n, [list(coords)])


def test_balanced_tensor_over_semisimple_counts_sectors():
    # A = B = S: dim A (x)_S B = dim S
    s_alg = semisimple_algebra(2)
    ring = _semisimple_ring(s_alg)
    bt = balanced_tensor(ring, ring)
    assert bt.dim == 2


def test_balanced_tensor_full_over_point():
    s_alg = semisimple_algebra(1)
    # K1-like over a single vertex is disallowed (loops); use S itself twice
    ring = _semisimple_ring(s_alg)
    bt = balanced_tensor(ring, ring)
    assert bt.dim == 1


def test_kvb_structure():
    v = line(2, 1, 0)
    kvb = build_kvb(v)
    # basis {e1, e2, v, b, vb}: dim 2k+3 with k = 1
    assert kvb.dim == 5
    assert kvb.check_unital() and kvb.check_associativity()
    # sector-matched representatives survive: b pairs with the target-side
    # idempotent e1, the arrow with its source-side idempotent
    words = {b.word for b in kvb.basis}
    assert words == {"e1 | e1", "e2 | e2", "v[0] | e1", "e1 | b", "v[0] | b"}


def test_kvb_dim_general_k():
    for n, k in ((3, 2), (4, 3)):
        v = Subspace.from_vectors(n, [[1 if i == j else 0 for j in range(n)] for i in range(k)])
        assert build_kvb(v).dim == 2 * k + 3


def test_v_twist_kills_wrong_order_products():
    # (1 (x) b)(a (x) 1) = v(b (x) a) = 0 for a, b in the augmentation ideals
    v = line(2, 1, 0)
    kv = _semisimple_ring(kronecker_algebra(v))
    k1 = _semisimple_ring(k1_op_algebra())
    tw = v_twist(kv, k1)
    # augmentation ideal of K(V): the arrow (eid 2); of K1-op: b (eid 2)
    assert tw.apply_pure(2, 2) == {}
    # fixsides verified on construction
    assert tw.fixsides_ok


def test_twisted_product_of_semisimple_parts():
    s1 = _semisimple_ring(semisimple_algebra(2))
    s2 = _semisimple_ring(semisimple_algebra(2))
    tw = v_twist(s1, s2)
    prod = twisted_product(s1, s2, tw)
    assert prod.dim == 2
    assert prod.check_unital()


def test_generalized_green_empty_steps():
    alg, records = generalized_green(2, [])
    assert alg.dim == 2
    assert records == []


def test_generalized_green_single_arrow():
    alg, records = generalized_green(2, [(1, 2, 0)])
    assert alg.dim == 3
    assert records[0]["product_dim"] == 3


def test_generalized_green_rejects_loops():
    with pytest.raises(ValueError):
        generalized_green(2, [(1, 1, 0)])


def test_generalized_green_matches_green_oracle():
    # towers c, b, c, ... rebuild the two-vertex series: dims follow the oracle
    for l in (2, 3, 4, 5):
        steps = []
        for t in range(1, l + 1):
            steps.append((1, 2, 0) if t % 2 == 1 else (2, 1, 0))
        alg, _ = generalized_green(2, steps)
        q, rels = green_quiver(l)
        o = build_oracle(q, rels, cutoff=2 * (l // 2) + 4)
        assert alg.dim == o.dim
        assert alg.check_associativity()


def test_factorize_empty_family():
    cert = factorize_R(Family(3, ()))
    assert cert.steps == []
    assert cert.terminal_dim == 5
    assert cert.ok
    assert cert.to_dict()["smoothness"] == "CERTIFIED-BY-FACTORIZATION"


def test_factorize_nodal_m1():
    f = random_family(2, 1, [1], seed=21)
    cert = factorize_R(f)
    assert len(cert.steps) == 1
    step = cert.steps[0]
    assert step.ok
    assert step.left_dim == 5 and step.base_dim == 3 and step.right_dim == 4
    assert step.product_dim == step.target_dim == 8


def test_factorize_green_chain():
    f = green_family(5)
    cert = factorize_R(f)
    assert len(cert.steps) == f.m == 2
    assert cert.ok
    # outermost left factor peels pair 2 with k_2 = 1
    assert cert.steps[0].left_dim == 2 * 1 + 3
    assert cert.steps[1].left_dim == 2 * 2 + 3


def test_factorize_kk2():
    cert = factorize_R(kk_family(2))
    assert len(cert.steps) == 2
    assert cert.ok
    for step in cert.steps:
        assert step.ideal_nilpotency_index > 0
        assert step.left_projectivity_injective


def test_factorize_graded_version():
    f = random_family(2, 2, [1, 1], seed=33)
    cert = factorize_R(f, chi_zero(2))
    assert cert.ok
    assert cert.chi == (0, 1, 1)


def test_left_projectivity_m1():
    f = random_family(2, 1, [1], seed=2)
    rep = left_projectivity_check(f)
    assert rep["injective"]
    # e1 K_2 = {e1}, e2 K_2 = {e2, c1, c2}: one Q1 copy, 3 - 1 = 2 Q2 copies
    assert rep["q1_multiplicity"] == 1
    assert rep["q2_multiplicity"] == 2


def test_left_projectivity_green4():
    assert left_projectivity_check(green_family(4))["injective"]


def test_left_projectivity_random():
    rep = left_projectivity_check(random_family(3, 2, [1, 1], seed=77))
    assert rep["injective"]


def test_ring_over_r_rejects_bad_inclusion():
    s_alg = semisimple_algebra(2)
    arrow = arrow_algebra(2, 1, 2)
    bad_incl = [{2: Fraction(1)}, {1: Fraction(1)}]  # e1 -> arrow: not unital
    with pytest.raises(ValueError):
        RingOverR(s_alg, arrow, bad_incl)
