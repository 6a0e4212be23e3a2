"""Exact scalars: the cyclotomic-rational fields Q(zeta_m), m <= 12.

A scalar is a polynomial in zeta_m with rational coefficients, reduced
modulo the m-th cyclotomic polynomial.  For m in {1, 2} this degenerates
to a plain rational.  There is no floating point anywhere: all arithmetic
is exact, and mixing conductors is an error rather than a coercion.
"""

from fractions import Fraction

try:
    from gmpy2 import mpq as Q  # much faster exact rationals
except ImportError:  # pragma: no cover
    Q = Fraction

MAX_CONDUCTOR = 12


class ConductorError(ValueError):
    """Unsupported conductor, or arithmetic across distinct conductors."""


class ScalarError(ArithmeticError):
    """Invalid scalar operation (e.g. inverting zero)."""


def cyclotomic_polynomial(m):
    """Integer coefficient list (low degree first, monic) of the m-th
    cyclotomic polynomial, for 1 <= m <= 12."""
    if not isinstance(m, int) or m < 1 or m > MAX_CONDUCTOR:
        raise ConductorError("conductor must be an integer in 1..%d, got %r"
                             % (MAX_CONDUCTOR, m))
    return _cyclotomic(m)


_CYCLO_CACHE = {}


def _cyclotomic(m):
    if m in _CYCLO_CACHE:
        return _CYCLO_CACHE[m]
    # x^m - 1 divided by the product of Phi_d over proper divisors d of m.
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            num = _polydiv_exact(num, _cyclotomic(d))
    _CYCLO_CACHE[m] = num
    return num


def _polydiv_exact(num, den):
    "Exact division of integer polynomials (low degree first)."
    num = list(num)
    dn = len(den) - 1
    assert den[dn] == 1
    quot = [0] * (len(num) - dn)
    for k in range(len(num) - 1, dn - 1, -1):
        c = num[k]
        quot[k - dn] = c
        if c:
            for j in range(dn + 1):
                num[k - dn + j] -= c * den[j]
    assert all(c == 0 for c in num[:dn]), "non-exact polynomial division"
    return quot


class _Field:
    "Per-conductor data: degree and reduction table for zeta^k, k < 2*deg."

    def __init__(self, m):
        phi = cyclotomic_polynomial(m)
        self.m = m
        self.deg = len(phi) - 1
        self.phi = phi
        # power_table[k] = coefficients of zeta^k reduced mod Phi_m
        table = []
        for k in range(2 * self.deg - 1):
            if k < self.deg:
                row = [Q(0)] * self.deg
                row[k] = Q(1)
            else:
                # zeta^k = zeta * zeta^(k-1), reduce the top term
                prev = table[k - 1]
                row = [Q(0)] + prev[: self.deg - 1]
                top = prev[self.deg - 1]
                if top:
                    for j in range(self.deg):
                        row[j] -= top * phi[j]
            table.append(row)
        self.power_table = [tuple(r) for r in table]


_FIELDS = {}


def _field(m):
    f = _FIELDS.get(m)
    if f is None:
        f = _FIELDS[m] = _Field(m)
    return f


class CycScalar:
    """Element of Q(zeta_m), as a coefficient tuple of length deg Phi_m."""

    __slots__ = ("m", "c")

    def __init__(self, m, coeffs):
        f = _field(m)
        c = tuple(Q(x) for x in coeffs)
        if len(c) != f.deg:
            raise ValueError("need %d coefficients for conductor %d, got %d"
                             % (f.deg, m, len(c)))
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "c", c)

    def __setattr__(self, *a):
        raise AttributeError("CycScalar is immutable")

    @staticmethod
    def of(m, rational):
        "The rational number `rational` inside Q(zeta_m)."
        f = _field(m)
        return CycScalar(m, (Q(rational),) + (Q(0),) * (f.deg - 1))

    @staticmethod
    def zero(m):
        return CycScalar.of(m, 0)

    @staticmethod
    def one(m):
        return CycScalar.of(m, 1)

    @staticmethod
    def zeta(m, power=1):
        "zeta_m ** power."
        f = _field(m)
        k = power % m
        acc = CycScalar.one(m)
        g = CycScalar(m, _field(m).power_table[1]) if f.deg > 1 else None
        if f.deg == 1:
            # zeta_1 = 1, zeta_2 = -1
            base = Q(1) if m == 1 else Q(-1)
            return CycScalar(m, (base ** k,))
        for _ in range(k):
            acc = acc * g
        return acc

    def _check(self, other):
        if not isinstance(other, CycScalar):
            raise TypeError("expected CycScalar, got %r" % (other,))
        if other.m != self.m:
            raise ConductorError("conductor mismatch: %d vs %d" % (self.m, other.m))

    def __add__(self, other):
        self._check(other)
        a, b = self.c, other.c
        return CycScalar(self.m, tuple(x + y for x, y in zip(a, b)))

    def __sub__(self, other):
        self._check(other)
        a, b = self.c, other.c
        return CycScalar(self.m, tuple(x - y for x, y in zip(a, b)))

    def __neg__(self):
        return CycScalar(self.m, tuple(-x for x in self.c))

    def __mul__(self, other):
        self._check(other)
        a, b = self.c, other.c
        d = len(a)
        if d == 1:
            return CycScalar(self.m, (a[0] * b[0],))
        prod = [Q(0)] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        table = _field(self.m).power_table
        out = [Q(0)] * d
        for k, ck in enumerate(prod):
            if ck:
                row = table[k]
                for j in range(d):
                    if row[j]:
                        out[j] += ck * row[j]
        return CycScalar(self.m, tuple(out))

    def inverse(self):
        if self.is_zero():
            raise ScalarError("inversion of zero")
        d = _field(self.m).deg
        if d == 1:
            return CycScalar(self.m, (Q(1) / self.c[0],))
        # extended Euclid in Q[x]: u * self + v * Phi_m = gcd = const
        r0 = [Q(x) for x in _field(self.m).phi]
        r1 = list(self.c)
        s0, s1 = [Q(0)], [Q(1)]
        while _polydeg(r1) > 0:
            q, r = _polydivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _polysub(s0, _polymul(q, s1))
        assert _polydeg(r1) == 0 and r1[0] != 0
        inv_c = Q(1) / r1[0]
        out = [x * inv_c for x in s1]
        out = (out + [Q(0)] * d)[:d]
        res = CycScalar(self.m, tuple(out))
        assert (res * self).is_one()
        return res

    def __truediv__(self, other):
        self._check(other)
        return self * other.inverse()

    def is_zero(self):
        return all(x == 0 for x in self.c)

    def is_one(self):
        return self.c[0] == 1 and all(x == 0 for x in self.c[1:])

    def is_rational(self):
        return all(x == 0 for x in self.c[1:])

    def rational_value(self):
        if not self.is_rational():
            raise ScalarError("scalar %s is not rational" % self)
        return self.c[0]

    def __eq__(self, other):
        if not isinstance(other, CycScalar):
            return NotImplemented
        self._check(other)
        return self.c == other.c

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return hash((self.m, self.c))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return "CycScalar(%d, %s)" % (self.m, format_scalar(self))

    def __str__(self):
        return format_scalar(self)

    def sort_key(self):
        "Deterministic total order key (coefficient-wise); not a field order."
        return tuple(self.c)


def zeta_in(field_m, k):
    """A primitive k-th root of unity inside Q(zeta_{field_m}), when one
    exists: k | m always works, and for odd m the field equals
    Q(zeta_{2m}) so k | 2m works too."""
    if k < 1:
        raise ConductorError("order must be positive")
    if field_m % k == 0:
        return CycScalar.zeta(field_m, field_m // k)
    if field_m % 2 == 1 and (2 * field_m) % k == 0:
        # zeta_{2m} = -zeta_m^{(m+1)/2}
        e = (2 * field_m) // k
        power = (((field_m + 1) // 2) * e) % field_m
        base = CycScalar.zeta(field_m, power)
        return base if e % 2 == 0 else -base
    raise ConductorError("no primitive %d-th root of unity in Q(zeta_%d)"
                         % (k, field_m))


def _polydeg(p):
    for k in range(len(p) - 1, -1, -1):
        if p[k] != 0:
            return k
    return -1


def _polysub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Q(0)] * (n - len(a))
    b = list(b) + [Q(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def _polymul(a, b):
    out = [Q(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _polydivmod(a, b):
    a = list(a)
    db = _polydeg(b)
    assert db >= 0
    lead = b[db]
    q = [Q(0)] * max(1, _polydeg(a) - db + 1)
    for k in range(_polydeg(a), db - 1, -1):
        if a[k]:
            c = a[k] / lead
            q[k - db] = c
            for j in range(db + 1):
                a[k - db + j] -= c * b[j]
    return q, a


def format_scalar(s):
    """Canonical text form "p/q + p/q*z + p/q*z^2 + ...", zero terms
    omitted; "0" for zero.  z denotes zeta_m; the conductor is carried
    separately by the container."""
    terms = []
    for k, x in enumerate(s.c):
        if x == 0:
            continue
        if k == 0:
            terms.append(str(x))
        elif k == 1:
            terms.append("%s*z" % x)
        else:
            terms.append("%s*z^%d" % (x, k))
    return " + ".join(terms) if terms else "0"


def parse_scalar(m, text):
    "Inverse of format_scalar for conductor m."
    d = _field(m).deg
    coeffs = [Q(0)] * d
    text = text.strip()
    if text == "0":
        return CycScalar(m, coeffs)
    for term in text.split(" + "):
        term = term.strip()
        if "*z^" in term:
            co, _, pw = term.partition("*z^")
            k = int(pw)
        elif term.endswith("*z"):
            co, k = term[:-2], 1
        else:
            co, k = term, 0
        if k >= d:
            raise ValueError("power z^%d out of range for conductor %d" % (k, m))
        coeffs[k] += Q(co)
    return CycScalar(m, tuple(coeffs))
