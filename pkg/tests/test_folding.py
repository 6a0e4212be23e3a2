import random

import pytest

from superweyl.scalars import CycScalar
from superweyl.classical import (
    build_sl, build_osp, cartan_subalgebra, root_decomposition,
    distinguished_base, triangular_decomposition, all_bases,
)
from superweyl.folding import (
    Automorphism, AutomorphismError, diagram_automorphism, compatible_scales,
    eigenspace_decomposition, fixed_subalgebra, identify_type,
    structural_checks, check_condition_c, standard_fold, symmetric_folds,
    emit_folding_table,
)


def setup_module(module):
    module.SL32 = build_sl(3, 2)
    module.FOLD32 = standard_fold(module.SL32)


def test_identity_automorphism():
    L = build_sl(2, 1)
    h = cartan_subalgebra(L)
    rs = root_decomposition(L, h)
    base = distinguished_base(L, rs)
    td = triangular_decomposition(L, rs, base)
    ident = tuple(range(len(base.simples)))
    nu = diagram_automorphism(L, td, ident, CycScalar.one(L.m))
    assert nu.is_identity()
    assert nu.order == 1
    g = eigenspace_decomposition(L, nu)
    assert g.dims() == [L.dim]
    sub, _ = fixed_subalgebra(L, nu, g)
    assert sub.dim == L.dim


def test_invalid_permutation_rejected():
    L = build_sl(2, 1)
    h = cartan_subalgebra(L)
    rs = root_decomposition(L, h)
    base = distinguished_base(L, rs)
    td = triangular_decomposition(L, rs, base)
    # swapping an even node with the odd node violates parity/compatibility
    with pytest.raises(AutomorphismError):
        diagram_automorphism(L, td, (1, 0), CycScalar.one(L.m))


def test_sl32_flip_order_two():
    nu, grading, sub, emb = FOLD32
    assert nu.order == 2
    assert grading.dims() == [12, 12]
    assert sub.dim == 12
    assert sub.check_axioms() == []


def test_sl32_flip_identifies_osp32():
    _, _, sub, _ = FOLD32
    assert identify_type(sub) == "osp(3|2)"


def test_osp22_flip_identifies_osp12():
    L = build_osp(2, 2)
    nu, grading, sub, emb = standard_fold(L)
    assert grading.dims() == [5, 3]
    assert identify_type(sub) == "osp(1|2)"


def test_self_identification():
    assert identify_type(build_osp(3, 2)) == "osp(3|2)"
    assert identify_type(build_osp(1, 2)) == "osp(1|2)"


def test_eigenspace_bracket_compatibility_and_killing_invariance():
    L = SL32
    nu, grading, sub, emb = FOLD32
    # dims sum is asserted inside eigenspace_decomposition; Killing invariance:
    rng = random.Random(3)
    for _ in range(12):
        i, j = rng.randrange(L.dim), rng.randrange(L.dim)
        x, y = L.basis_element(i), L.basis_element(j)
        assert L.killing_form(nu.apply(x), nu.apply(y)) == L.killing_form(x, y)


def test_structural_checks_sl32():
    L = SL32
    nu, grading, sub, emb = FOLD32
    rep = structural_checks(L, nu, sub, emb, grading)
    assert rep.passed, rep.render()
    names = [n for n, _, _ in rep.items]
    assert names == ["root-spaces-nu-stable", "g0-self-normalizing",
                     "pairing-blocks", "g0-equals-cartan"]


def test_structural_checks_identity_automorphism():
    L = build_osp(1, 2)
    nu = Automorphism.identity(L)
    grading = eigenspace_decomposition(L, nu)
    sub, emb = fixed_subalgebra(L, nu, grading)
    rep = structural_checks(L, nu, sub, emb, grading)
    assert rep.passed, rep.render()


def test_condition_c_distinguished():
    for builder, args in [(build_osp, (1, 2)), (build_osp, (3, 2))]:
        L = builder(*args)
        rs = root_decomposition(L, cartan_subalgebra(L))
        base = distinguished_base(L, rs)
        flag, mtheta, par = check_condition_c(L, rs, base)
        assert flag and par == 0
        # the lowest root has the most negative height
        heights = [base.height(a) for a, _, _ in rs.roots]
        assert base.height(mtheta) == min(heights)


def test_condition_c_fails_on_odd_lowest_base():
    L = build_osp(3, 2)
    rs = root_decomposition(L, cartan_subalgebra(L))
    hit = None
    for f, b in all_bases(L, rs):
        flag, mtheta, par = check_condition_c(L, rs, b)
        if not flag:
            hit = (b, par)
            break
    assert hit is not None
    assert hit[1] == 1


def test_fixed_subalgebra_type_ii():
    # the fixed subalgebra of an in-scope folding is type II
    from superweyl.classical import z_grading
    for L, fold in [(SL32, FOLD32), (build_osp(2, 2), None)]:
        nu, grading, sub, emb = fold if fold else standard_fold(L)
        h = cartan_subalgebra(sub)
        rs = root_decomposition(sub, h)
        base = distinguished_base(sub, rs)
        td = triangular_decomposition(sub, rs, base)
        _, kind = z_grading(sub, td)
        assert kind == "II"


def test_folding_table():
    lines, ok = emit_folding_table()
    assert ok
    text = "\n".join(lines)
    assert "osp(3|2)" in text and "osp(1|2)" in text


def test_folding_table_deterministic():
    a = emit_folding_table()
    b = emit_folding_table()
    assert a == b
