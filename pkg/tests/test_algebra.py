import random

import pytest

from superweyl.scalars import CycScalar
from superweyl.algebra import (
    SuperAlgebra, AlgebraError, supercommutator, write_algebra, read_algebra,
)
from superweyl.classical import (
    build_sl, build_osp, cartan_subalgebra, root_decomposition,
    distinguished_base, triangular_decomposition,
)


def one(m=1):
    return CycScalar.one(m)


def test_check_axioms_pass_sl21():
    assert build_sl(2, 1).check_axioms() == []


def test_check_axioms_fail_bad_grading():
    # one odd generator y with [y, y] = y: odd+odd must land even
    L = SuperAlgebra("bad", 1, ["y"], [1], {(0, 0): {0: one()}})
    report = L.check_axioms()
    assert any(v.startswith("grading") for v in report)


def test_check_axioms_abelian():
    L = SuperAlgebra("abelian", 1, ["a", "b", "c"], [0, 0, 1], {})
    assert L.check_axioms() == []


def test_bracket_even_self_is_zero():
    L = build_sl(2, 1)
    rng = random.Random(7)
    for _ in range(10):
        x = {i: CycScalar.of(1, rng.randint(-3, 3))
             for i in range(L.dim) if L.parities[i] == 0}
        assert L.bracket(x, x) == {}


def test_bracket_matches_matrix_commutator_oracle():
    # structure constants agree with the supercommutator of realizations
    for L in (build_sl(2, 1), build_osp(3, 2)):
        rng = random.Random(13)
        for _ in range(12):
            p = rng.choice([0, 1])
            q = rng.choice([0, 1])
            x = {i: CycScalar.of(1, rng.randint(-2, 2))
                 for i in range(L.dim) if L.parities[i] == p}
            y = {i: CycScalar.of(1, rng.randint(-2, 2))
                 for i in range(L.dim) if L.parities[i] == q}
            z = L.bracket(x, y)
            C = supercommutator(L.realization_of(x), L.realization_of(y), p, q)
            assert L.realization_of(z) == C


def test_bracket_odd_square_osp12():
    # [f_b, f_b] is a nonzero multiple of f_2b in osp(1|2)
    L = build_osp(1, 2)
    h = cartan_subalgebra(L)
    rs = root_decomposition(L, h)
    base = distinguished_base(L, rs)
    beta = base.simples[0]
    assert beta[1] == 1
    neg = {tuple(x.sort_key() for x in a): (a, p, v) for a, p, v in rs.roots}
    f_b = neg[tuple((-x).sort_key() for x in beta[0])][2][0]
    sq = L.bracket(f_b, f_b)
    assert sq
    two_beta_neg = neg[tuple((-(x + x)).sort_key() for x in beta[0])]
    f_2b = two_beta_neg[2][0]
    assert two_beta_neg[1] == 0
    # proportionality: sq and f_2b have equal ratios on common support
    ks = sorted(sq)
    ratio = sq[ks[0]] / f_2b[ks[0]]
    assert sq == {k: f_2b[k] * ratio for k in f_2b}


def test_foreign_index_rejected():
    L = build_sl(2, 1)
    with pytest.raises(AlgebraError):
        L.bracket({99: one()}, {0: one()})


def test_ad_zero_and_center():
    L = build_sl(2, 1)
    assert L.ad({}).is_zero()
    # in an abelian algebra every element is central and ad vanishes
    A = SuperAlgebra("ab2", 1, ["a", "b"], [0, 0], {})
    assert A.ad({0: one()}).is_zero()


def test_ad_of_cartan_is_diagonal():
    L = build_sl(2, 1)
    for h in cartan_subalgebra(L):
        M = L.ad(h)
        assert all(r == c for (r, c) in M.entries)


def test_supertrace_identity():
    from superweyl.linalg import SparseMatrix
    L = build_sl(2, 1)           # 4 even + 4 odd
    assert L.supertrace(SparseMatrix.identity(8, 1)).is_zero()
    L2 = build_osp(1, 2)         # 3 even + 2 odd
    assert L2.supertrace(SparseMatrix.identity(5, 1)) == CycScalar.one(1)
    assert L2.supertrace(SparseMatrix(5, 5, 1)).is_zero()


def test_killing_consistency_supersymmetry_invariance():
    L = build_osp(3, 2)
    rng = random.Random(5)
    idx_even = [i for i in range(L.dim) if L.parities[i] == 0]
    idx_odd = [i for i in range(L.dim) if L.parities[i] == 1]
    x = {rng.choice(idx_even): one()}
    y = {rng.choice(idx_odd): one()}
    assert L.killing_form(x, y).is_zero()
    for _ in range(8):
        i, j = rng.randrange(L.dim), rng.randrange(L.dim)
        a, b = L.basis_element(i), L.basis_element(j)
        k_ab = L.killing_form(a, b)
        k_ba = L.killing_form(b, a)
        if L.parities[i] and L.parities[j]:
            assert k_ab == -k_ba
        else:
            assert k_ab == k_ba
    for _ in range(8):
        i, j, k = (rng.randrange(L.dim) for _ in range(3))
        a, b, c = (L.basis_element(t) for t in (i, j, k))
        assert L.killing_form(L.bracket(a, b), c) == L.killing_form(a, L.bracket(b, c))


def test_killing_proportional_to_supertrace_form_sl21():
    # on sl(m|n): K(x, y) = 2(m-n) str(xy); here 2(2-1) = 2
    L = build_sl(2, 1)
    two = CycScalar.of(1, 2)
    rng = random.Random(11)
    for _ in range(10):
        i, j = rng.randrange(L.dim), rng.randrange(L.dim)
        x, y = L.basis_element(i), L.basis_element(j)
        assert L.killing_form(x, y) == two * L.supertrace_form(x, y)


def test_subalgebra_closure_even_sl2_triple():
    # closure of the highest even root pair in sl(2|1) is a 3-dim even algebra
    L = build_sl(2, 1)
    h = cartan_subalgebra(L)
    rs = root_decomposition(L, h)
    evens = rs.even_roots()
    assert len(evens) == 2
    e = evens[0][2][0]
    f = evens[1][2][0]
    sub, emb = L.subalgebra_closure([e, f])
    assert sub.dim == 3
    assert sub.dims_by_parity() == (3, 0)
    assert sub.check_axioms() == []


def test_subalgebra_closure_trivial_cases():
    L = build_sl(2, 1)
    zero, _ = L.subalgebra_closure([])
    assert zero.dim == 0
    full, emb = L.subalgebra_closure([L.basis_element(i) for i in range(L.dim)])
    assert full.dim == L.dim
    assert full.check_axioms() == []


def test_file_roundtrip_bit_exact():
    for L in (build_sl(2, 1), build_osp(2, 2)):
        text = write_algebra(L)
        L2 = read_algebra(text)
        assert write_algebra(L2) == text
        assert L2.brackets == L.brackets
        assert L2.parities == L.parities
        assert [M.entries for M in L2.realization] == [M.entries for M in L.realization]
