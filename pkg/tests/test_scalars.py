import random

import pytest

from superweyl.scalars import (
    CycScalar, ConductorError, ScalarError, Q,
    cyclotomic_polynomial, format_scalar, parse_scalar,
)


def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def poly_divide(num, den):
    "Oracle: schoolbook exact division, independent of the library internals."
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for k in range(len(num) - 1, len(den) - 2, -1):
        c = num[k]
        q[k - len(den) + 1] = c
        for j, d in enumerate(den):
            num[k - len(den) + 1 + j] -= c * d
    assert all(v == 0 for v in num[:len(den) - 1])
    return q


def test_cyclotomic_small():
    assert cyclotomic_polynomial(1) == [-1, 1]        # x - 1
    assert cyclotomic_polynomial(2) == [1, 1]         # x + 1
    # Phi_4 = (x^4 - 1) / (Phi_1 * Phi_2), computed here by hand division
    x4m1 = [-1, 0, 0, 0, 1]
    expected = poly_divide(x4m1, poly_mul([-1, 1], [1, 1]))
    assert cyclotomic_polynomial(4) == expected == [1, 0, 1]


def test_cyclotomic_product_identity():
    # prod over d | m of Phi_d == x^m - 1, for every supported conductor
    for m in range(1, 13):
        prod = [1]
        for d in range(1, m + 1):
            if m % d == 0:
                prod = poly_mul(prod, cyclotomic_polynomial(d))
        expected = [-1] + [0] * (m - 1) + [1]
        assert prod == expected


def test_conductor_range():
    with pytest.raises(ConductorError):
        cyclotomic_polynomial(0)
    with pytest.raises(ConductorError):
        cyclotomic_polynomial(13)


def test_zeta2_squares_to_one():
    z = CycScalar.zeta(2)
    assert (z * z).is_one()


def test_zeta4_squared_is_minus_one():
    z = CycScalar.zeta(4)
    assert z * z == CycScalar.of(4, -1)


def test_zeta_power_m_is_one_and_inverse():
    for m in range(1, 13):
        z = CycScalar.zeta(m)
        p = CycScalar.one(m)
        for _ in range(m):
            p = p * z
        assert p.is_one()
        assert z.inverse() == CycScalar.zeta(m, m - 1)


def test_conductor_mismatch_rejected():
    with pytest.raises(ConductorError):
        CycScalar.one(2) + CycScalar.one(4)
    with pytest.raises(ConductorError):
        CycScalar.one(3) == CycScalar.one(4)


def test_invert_zero():
    with pytest.raises(ScalarError):
        CycScalar.zero(5).inverse()


def rand_scalar(rng, m, deg):
    return CycScalar(m, tuple(Q(rng.randint(-5, 5), rng.randint(1, 4))
                              for _ in range(deg)))


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5, 8, 12])
def test_field_axioms_randomized(m):
    rng = random.Random(20240 + m)
    deg = len(cyclotomic_polynomial(m)) - 1
    for _ in range(40):
        a = rand_scalar(rng, m, deg)
        b = rand_scalar(rng, m, deg)
        c = rand_scalar(rng, m, deg)
        assert (a + b) * c == a * c + b * c
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        if not a.is_zero():
            assert (a * a.inverse()).is_one()
            assert a / a == CycScalar.one(m)


@pytest.mark.parametrize("m", [1, 2, 4, 5, 12])
def test_serialization_roundtrip(m):
    rng = random.Random(77 + m)
    deg = len(cyclotomic_polynomial(m)) - 1
    for _ in range(25):
        a = rand_scalar(rng, m, deg)
        text = format_scalar(a)
        assert parse_scalar(m, text) == a
    assert format_scalar(CycScalar.zero(m)) == "0"
    assert parse_scalar(m, "0") == CycScalar.zero(m)


def test_rational_degeneration():
    # conductors 1 and 2 are a single rational
    assert len(CycScalar.one(1).c) == 1
    assert len(CycScalar.one(2).c) == 1
    assert CycScalar.zeta(1).is_one()
    assert CycScalar.zeta(2) == CycScalar.of(2, -1)
