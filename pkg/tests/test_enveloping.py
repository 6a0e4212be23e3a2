import random

import pytest

from superweyl.scalars import CycScalar, Q
from superweyl.classical import build_osp, cartan_subalgebra, root_decomposition, \
    distinguished_base, triangular_decomposition
from superweyl.mapalgebra import build_truncated_algebra
from superweyl.enveloping import (
    PbwAlgebra, CapExceeded, GarlandCheck, sl2_algebra, invariant_subalgebra,
    env_add, env_scale, format_env, check_garland,
)


def sc(v, m=1):
    return CycScalar.of(m, v)


def test_sl2_defining_relation():
    # e*f = f*e + h
    L = sl2_algebra()
    P = PbwAlgebra(L)
    nf = P.normal_form_word((2, 0))      # e then f
    assert nf == {((0, 1), (2, 1)): sc(1), ((1, 1),): sc(1)}


def test_already_ordered_word_unchanged():
    L = sl2_algebra()
    P = PbwAlgebra(L)
    word = (0, 0, 1, 2)
    nf = P.normal_form_word(word)
    assert nf == {((0, 2), (1, 1), (2, 1)): sc(1)}


def test_odd_square_rewrites_to_half_bracket():
    # odd y with [y, y] = 2x: y*y -> x
    one = CycScalar.one(1)
    from superweyl.algebra import SuperAlgebra
    L = SuperAlgebra("toy", 1, ["x", "y"], [0, 1], {(1, 1): {0: sc(2)}})
    assert L.check_axioms() == []
    P = PbwAlgebra(L)
    assert P.normal_form_word((1, 1)) == {((0, 1),): one}


def test_osp12_odd_squares():
    # in U(osp(1|2)) the square of an odd root vector is half its bracket
    L = build_osp(1, 2)
    P = PbwAlgebra(L)
    for i in range(L.dim):
        if L.parities[i] == 1:
            sq = L.bracket_basis(i, i)
            nf = P.normal_form_word((i, i))
            want = {}
            for k, v in sq.items():
                want[((k, 1),)] = v * CycScalar.of(1, Q(1, 2))
            assert nf == want


def test_confluence_of_strategies_randomized():
    L = build_osp(1, 2)
    P = PbwAlgebra(L)
    rng = random.Random(2024)
    for _ in range(40):
        word = tuple(rng.randrange(L.dim) for _ in range(rng.randint(2, 6)))
        assert P.normal_form_word(word, "first") == P.normal_form_word(word, "last")


def test_cap_enforced():
    L = sl2_algebra()
    P = PbwAlgebra(L, cap=4)
    with pytest.raises(CapExceeded):
        P.normal_form_word((2, 2, 2, 0, 0))


def test_multiply_associative_randomized():
    L = build_osp(1, 2)
    P = PbwAlgebra(L)
    rng = random.Random(7)
    def rand_env():
        out = {}
        for _ in range(2):
            word = tuple(rng.randrange(L.dim) for _ in range(rng.randint(1, 3)))
            out = env_add(out, P.normal_form_word(word))
        return out
    for _ in range(10):
        a, b, c = rand_env(), rand_env(), rand_env()
        assert P.multiply(P.multiply(a, b), c) == P.multiply(a, P.multiply(b, c))


def test_garland_series_small_coefficients():
    A = build_truncated_algebra(4, 1)
    chk = GarlandCheck(A)
    t = {1: sc(1)}
    ps = chk.garland_coefficients(t, 2)
    P = chk.P
    assert ps[0] == P.one()
    h_t = P.from_element(chk.tensor("h", t))
    assert ps[1] == env_scale(h_t, sc(-1))
    h_t2 = P.from_element(chk.tensor("h", {2: sc(1)}))
    half = CycScalar.of(1, Q(1, 2))
    expected = env_add(env_scale(P.multiply(h_t, h_t), half),
                       env_scale(h_t2, -half))
    assert ps[2] == expected


def test_garland_membership_r1_residual():
    # residual of the r=1, a=1 instance is exactly (1/2) f^2 e
    A = build_truncated_algebra(4, 1)
    chk = GarlandCheck(A)
    one_a = {0: sc(1)}
    ok, C = chk.run(one_a, 1)
    assert ok
    f_idx = chk.mapalg.labels.index("f*1")
    e_idx = chk.mapalg.labels.index("e*1")
    assert C == {((f_idx, 2), (e_idx, 1)): CycScalar.of(1, Q(1, 2))}


def test_garland_membership_r1_a_t():
    A = build_truncated_algebra(2, 1)
    chk = GarlandCheck(A)
    ok, C = chk.run({1: sc(1)}, 1)
    assert ok
    f_idx = chk.mapalg.labels.index("f*1")
    et_idx = chk.mapalg.labels.index("e*t")
    assert C == {((f_idx, 2), (et_idx, 1)): CycScalar.of(1, Q(1, 2))}


def test_garland_membership_all_r():
    A = build_truncated_algebra(4, 1)
    chk = GarlandCheck(A)
    for a in ({0: sc(1)}, {1: sc(1)}):
        for r in (1, 2, 3):
            ok, _ = chk.run(a, r)
            assert ok


def test_garland_fails_without_divided_powers():
    A = build_truncated_algebra(4, 1)
    chk = GarlandCheck(A)
    ok, C = chk.run({0: sc(1)}, 1, divided=False)
    assert not ok
    # the residual contains a lowering*cartan monomial with no raising factor
    f_idx = chk.mapalg.labels.index("f*1")
    h_idx = chk.mapalg.labels.index("h*1")
    assert ((f_idx, 1), (h_idx, 1)) in C


def test_invariant_subalgebra_of_twisted_coefficients():
    A = build_truncated_algebra(4, 2)
    Ainv = invariant_subalgebra(A)
    assert Ainv.dim == 2 and Ainv.labels == ("1", "t^2")
    # (t^2)^2 = 0 in trunc(4)
    assert Ainv.multiply({1: sc(1)}, {1: sc(1)}) == {}


def test_check_garland_wrapper():
    A = build_truncated_algebra(2, 1)
    rep = check_garland(A, {0: sc(1)}, 2)
    assert rep["member"] and rep["r"] == 2
