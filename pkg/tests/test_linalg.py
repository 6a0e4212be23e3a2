import random

from superweyl.scalars import CycScalar, Q
from superweyl.linalg import SparseMatrix, Echelon, row_reduce, solve


def mat(m, rows):
    "Dense list-of-lists of ints/fractions -> SparseMatrix over Q(zeta_m)."
    M = SparseMatrix(len(rows), len(rows[0]) if rows else 0, m)
    for r, row in enumerate(rows):
        for c, v in enumerate(row):
            M[r, c] = CycScalar.of(m, v)
    return M


def test_identity_rank():
    M = SparseMatrix.identity(3, 1)
    rows, kernel, rank = row_reduce(M)
    assert rank == 3
    assert kernel == []
    assert len(rows) == 3


def test_zero_matrix():
    M = SparseMatrix(2, 4, 1)
    rows, kernel, rank = row_reduce(M)
    assert rank == 0
    assert len(kernel) == 4


def test_rank_one_kernel():
    # [[1,2],[2,4]]: rank 1, kernel spanned by (-2, 1) -- hand elimination
    M = mat(1, [[1, 2], [2, 4]])
    rows, kernel, rank = row_reduce(M)
    assert rank == 1
    assert len(kernel) == 1
    v = kernel[0]
    assert v == {1: CycScalar.one(1), 0: CycScalar.of(1, -2)}


def test_kernel_exactness_randomized():
    rng = random.Random(4242)
    for m in (1, 2, 4):
        for _ in range(15):
            nr, nc = rng.randint(1, 6), rng.randint(1, 6)
            M = SparseMatrix(nr, nc, m)
            for r in range(nr):
                for c in range(nc):
                    if rng.random() < 0.5:
                        M[r, c] = CycScalar.of(m, Q(rng.randint(-4, 4), rng.randint(1, 3)))
            rows, kernel, rank = row_reduce(M)
            assert rank + len(kernel) == nc
            for v in kernel:
                assert M.mul_vec(v) == {}


def test_rank_invariant_under_row_permutation():
    rng = random.Random(99)
    for _ in range(20):
        nr, nc = rng.randint(2, 6), rng.randint(2, 6)
        rows = [[rng.randint(-3, 3) for _ in range(nc)] for _ in range(nr)]
        M1 = mat(2, rows)
        perm = list(range(nr))
        rng.shuffle(perm)
        M2 = mat(2, [rows[p] for p in perm])
        assert row_reduce(M1)[2] == row_reduce(M2)[2]
        # fully reduced echelon rows agree as a set regardless of row order
        assert row_reduce(M1)[0] == row_reduce(M2)[0]


def test_echelon_membership_and_combo():
    e = Echelon(1)
    one = CycScalar.one(1)
    two = CycScalar.of(1, 2)
    e.add({0: one, 1: two})
    e.add({1: one})
    assert e.rank == 2
    assert e.contains({0: two, 1: two})
    res, combo = e.reduce_with_combo({0: one, 1: one, 2: one})
    assert res == {2: one}
    assert set(combo) == {0, 1}


def test_solve_exact():
    M = mat(1, [[1, 2], [3, 4]])
    rhs = {0: CycScalar.of(1, 5), 1: CycScalar.of(1, 11)}
    x = solve(M, rhs)
    assert x is not None
    assert M.mul_vec(x) == rhs
    # inconsistent system
    M2 = mat(1, [[1, 2], [2, 4]])
    assert solve(M2, {0: CycScalar.one(1), 1: CycScalar.of(1, 3)}) is None


def test_matmul_exact():
    A = mat(1, [[1, 2], [0, 1]])
    B = mat(1, [[1, 0], [-1, 1]])
    C = A.matmul(B)
    assert C == mat(1, [[-1, 2], [-1, 1]])
