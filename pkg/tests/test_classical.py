import pytest

from superweyl.scalars import CycScalar
from superweyl.classical import (
    FamilyError, build_sl, build_osp, cartan_subalgebra, root_decomposition,
    distinguished_base, base_from_functional, all_bases,
    triangular_decomposition, z_grading,
)


def pipeline(L):
    h = cartan_subalgebra(L)
    rs = root_decomposition(L, h)
    base = distinguished_base(L, rs)
    td = triangular_decomposition(L, rs, base)
    return h, rs, base, td


def test_sl_dimensions():
    L = build_sl(2, 1)
    assert L.dim == 8 and L.dims_by_parity() == (4, 4)
    assert build_sl(3, 2).dim == 24
    with pytest.raises(FamilyError):
        build_sl(2, 2)


def test_osp_dimensions():
    assert build_osp(1, 2).dims_by_parity() == (3, 2)
    assert build_osp(3, 2).dims_by_parity() == (6, 6)
    assert build_osp(2, 2).dim == 8
    with pytest.raises(FamilyError):
        build_osp(2, 3)


def test_cartan_dimensions():
    assert len(cartan_subalgebra(build_sl(2, 1))) == 2
    assert len(cartan_subalgebra(build_sl(3, 2))) == 4
    assert len(cartan_subalgebra(build_osp(1, 2))) == 1


def test_cartan_self_normalizing():
    L = build_sl(2, 1)
    h = cartan_subalgebra(L)
    # any x with [x, h] in span(h) for all h must itself be in span(h)
    from superweyl.linalg import Echelon, SparseMatrix, row_reduce
    span = Echelon(L.m)
    for v in h:
        span.add(v)
    rows = {}
    nrow = 0
    for hk in h:
        for i in range(L.dim):
            res = span.reduce(L.bracket(L.basis_element(i), hk))
            for k, val in res.items():
                rows.setdefault((nrow, k), {})
            for k, val in res.items():
                rows[(nrow, k)][i] = val
        nrow += 1
    # assemble: one constraint row per (hk, ambient coordinate)
    flat = {}
    ridx = {}
    for (nr, k), cols in rows.items():
        r = ridx.setdefault((nr, k), len(ridx))
        flat[r] = cols
    M = SparseMatrix.from_rows(len(ridx), L.dim, L.m,
                               [flat[r] for r in range(len(ridx))])
    _, kern, _ = row_reduce(M)
    assert len(kern) == len(h)


def test_root_counts():
    L = build_sl(2, 1)
    rs = root_decomposition(L, cartan_subalgebra(L))
    assert (len(rs.even_roots()), len(rs.odd_roots())) == (2, 4)
    L = build_sl(3, 2)
    rs = root_decomposition(L, cartan_subalgebra(L))
    assert (len(rs.even_roots()), len(rs.odd_roots())) == (8, 12)
    L = build_osp(1, 2)
    rs = root_decomposition(L, cartan_subalgebra(L))
    assert (len(rs.even_roots()), len(rs.odd_roots())) == (2, 2)


def test_root_spaces_are_ad_eigenspaces():
    L = build_osp(3, 2)
    h = cartan_subalgebra(L)
    rs = root_decomposition(L, h)
    for alpha, par, vecs in rs.roots:
        for k, hk in enumerate(h):
            for v in vecs:
                lhs = L.bracket(hk, v)
                rhs = {i: val * alpha[k] for i, val in v.items() if not (val * alpha[k]).is_zero()}
                assert lhs == rhs


def test_root_reconstruction_dimension():
    for L in (build_sl(2, 1), build_sl(3, 2), build_osp(2, 2), build_osp(3, 2)):
        h = cartan_subalgebra(L)
        rs = root_decomposition(L, h)
        total = len(h) + sum(len(v) for _, _, v in rs.roots)
        assert total == L.dim


def test_distinguished_bases():
    for builder, args, rank in [(build_sl, (2, 1), 2), (build_osp, (1, 2), 1),
                                (build_osp, (3, 2), 2)]:
        L = builder(*args)
        rs = root_decomposition(L, cartan_subalgebra(L))
        base = distinguished_base(L, rs)
        assert len(base.simples) == rank
        assert len(base.odd_simple_indices()) == 1
        # all positive roots are nonnegative integer combinations
        for alpha, _, _ in base.positives:
            assert all(c >= 0 for c in base.expand(alpha))


def test_triangular_decomposition_dims():
    L = build_osp(1, 2)
    _, _, _, td = pipeline(L)
    assert (len(td.n_minus), len(td.h), len(td.n_plus)) == (2, 1, 2)
    L = build_sl(2, 1)
    _, _, _, td = pipeline(L)
    assert (len(td.n_minus), len(td.h), len(td.n_plus)) == (3, 2, 3)
    for builder, args in [(build_sl, (3, 2)), (build_osp, (3, 2)), (build_osp, (2, 2))]:
        L = builder(*args)
        _, _, _, td = pipeline(L)
        assert len(td.n_minus) + len(td.h) + len(td.n_plus) == L.dim


def test_chevalley_relations():
    for builder, args in [(build_sl, (2, 1)), (build_osp, (3, 2))]:
        L = builder(*args)
        _, rs, base, td = pipeline(L)
        for (e, f, h), (alpha, _, _) in zip(td.chevalley, base.simples):
            assert L.bracket(e, f) == h
            val = rs.evaluate(alpha, h, L.dim)
            want = {k: v * val for k, v in e.items() if not (v * val).is_zero()}
            assert L.bracket(h, e) == want
        # [h, n+] stays inside n+
        from superweyl.linalg import Echelon
        span = Echelon(L.m)
        for _, _, v in td.n_plus:
            span.add(v)
        for hk in td.h:
            for _, _, v in td.n_plus:
                assert span.contains(L.bracket(hk, v))


def test_z_grading_types():
    # type I: sl(m|n) with m != n and osp(2|2n); type II: osp(m|2n), m != 2
    for builder, args, expected in [(build_sl, (2, 1), "I"),
                                    (build_osp, (3, 2), "II"),
                                    (build_osp, (2, 2), "I"),
                                    (build_osp, (1, 2), "II")]:
        L = builder(*args)
        _, _, _, td = pipeline(L)
        comps, kind = z_grading(L, td)
        assert kind == expected
        if kind == "I":
            assert set(comps) <= {-1, 0, 1}
        else:
            assert set(comps) <= {-2, -1, 0, 1, 2}


def test_killing_nondegenerate_on_cartan():
    from superweyl.linalg import row_reduce
    for builder, args in [(build_sl, (2, 1)), (build_sl, (3, 2)), (build_osp, (1, 2)),
                          (build_osp, (2, 2)), (build_osp, (3, 2))]:
        L = builder(*args)
        h = cartan_subalgebra(L)
        G = L.killing_gram(h, h)
        assert row_reduce(G)[2] == len(h)
