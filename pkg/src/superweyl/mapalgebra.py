"""Coefficient algebras with a cyclic-group action, map superalgebras
g (x) A, and their equivariant (fixed-point) subalgebras.

The coefficient algebra is the truncated polynomial ring C[t]/t^N with the
generator acting by t -> zeta * t, so t^j sits in the grade-(j mod m)
component and the fixed points (g (x) A)^Gamma decompose as the direct sum
of g_s (x) A_{-s}.
"""

from .scalars import CycScalar, zeta_in
from .linalg import SparseMatrix, Echelon, row_reduce
from .algebra import SuperAlgebra
from .classical import DefectError


class GammaAlgebra:
    """Finite-dimensional commutative unital algebra with a grading induced
    by an order-m automorphism acting diagonally on the basis."""

    def __init__(self, name, conductor, order, labels, mult, grades, unit=0):
        self.name = name
        self.m = conductor
        self.order = order
        self.labels = tuple(labels)
        self.mult = dict(mult)        # (i, j) with i <= j -> {k: CycScalar}
        self.grades = tuple(grades)   # grade of each basis element mod order
        self.unit = unit

    @property
    def dim(self):
        return len(self.labels)

    def mult_basis(self, i, j):
        if i > j:
            i, j = j, i
        return self.mult.get((i, j), {})

    def multiply(self, x, y):
        "Product of sparse element dictionaries."
        acc = {}
        for i, xi in x.items():
            for j, yj in y.items():
                s = xi * yj
                for k, v in self.mult_basis(i, j).items():
                    t = v * s
                    cur = acc.get(k)
                    sv = t if cur is None else cur + t
                    if sv.is_zero():
                        acc.pop(k, None)
                    else:
                        acc[k] = sv
        return acc

    def power(self, x, k):
        out = {self.unit: CycScalar.one(self.m)}
        for _ in range(k):
            out = self.multiply(out, x)
        return out

    def component(self, s):
        "Basis indices of the grade-s component."
        s %= self.order
        return [i for i, g in enumerate(self.grades) if g == s]

    def invariant_component(self):
        return self.component(0)

    def check(self):
        "Commutativity/associativity on basis triples, grading, unit placement."
        report = []
        n = self.dim
        if self.grades[self.unit] != 0:
            report.append("unit is not in the grade-0 component")
        one = {self.unit: CycScalar.one(self.m)}
        for i in range(n):
            b = {i: CycScalar.one(self.m)}
            if self.multiply(one, b) != b:
                report.append("unit fails at %d" % i)
        for (i, j), vec in self.mult.items():
            want = (self.grades[i] + self.grades[j]) % self.order
            for k in vec:
                if self.grades[k] != want:
                    report.append("grading: %d*%d hits grade %d, expected %d"
                                  % (i, j, self.grades[k], want))
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    a, b, c = ({t: CycScalar.one(self.m)} for t in (i, j, k))
                    lhs = self.multiply(self.multiply(a, b), c)
                    rhs = self.multiply(a, self.multiply(b, c))
                    if lhs != rhs:
                        report.append("associativity fails at (%d,%d,%d)" % (i, j, k))
        return report


def build_truncated_algebra(N, order, conductor=None):
    """C[t]/t^N with sigma(t) = zeta_order * t.  The grade of t^j is j mod
    order, so the fixed subalgebra is spanned by the powers divisible by
    the order."""
    if N < 1 or N > 6:
        raise DefectError("truncation length %d outside the desk range" % N)
    if conductor is None:
        conductor = 1 if order <= 2 else order
    zeta_in(conductor, order)   # raises if the conductor cannot host the action
    labels = ["1"] + ["t" if j == 1 else "t^%d" % j for j in range(1, N)]
    mult = {}
    one = CycScalar.one(conductor)
    for i in range(N):
        for j in range(i, N):
            if i + j < N:
                mult[(i, j)] = {i + j: one}
    grades = [j % order for j in range(N)]
    return GammaAlgebra("trunc(%d)" % N, conductor, order, labels, mult, grades)


# ----------------------------------------------------------------------

def pair_index(L, A, i, p):
    return i * A.dim + p


def map_superalgebra(L, A):
    """The superalgebra g (x) A on pairs (basis of g) x (basis of A) with
    [u (x) f, v (x) g] = [u, v] (x) fg and the parity of the g-factor."""
    if L.m != A.m:
        raise DefectError("conductor mismatch: algebra %d, coefficients %d"
                          % (L.m, A.m))
    NA = A.dim
    labels = []
    parities = []
    for i in range(L.dim):
        for p in range(NA):
            labels.append("%s*%s" % (L.labels[i], A.labels[p]))
            parities.append(L.parities[i])

    def fn(a, b):
        i, p = divmod(a, NA)
        j, q = divmod(b, NA)
        gvec = L.bracket_basis(i, j)
        if not gvec:
            return {}
        avec = A.mult_basis(p, q)
        if not avec:
            return {}
        out = {}
        for k, v in gvec.items():
            for r, w in avec.items():
                out[k * NA + r] = v * w
        return out

    name = "%s@%s" % (L.name, A.name)
    return SuperAlgebra.from_bracket_fn(name, L.m, labels, parities, fn)


def tensor_element(L, A, gvec, avec):
    "Element of g (x) A from an element of g and an element of A."
    out = {}
    for i, v in gvec.items():
        for p, w in avec.items():
            t = v * w
            if not t.is_zero():
                out[pair_index(L, A, i, p)] = t
    return out


class EqMapAlgebra:
    """(g (x) A)^Gamma as a standalone superalgebra, with the provenance of
    each basis element: its grade s, its g-part (an element of g) and its
    coefficient basis index."""

    def __init__(self, algebra, embedding, provenance, L, A, nu, ambient):
        self.algebra = algebra          # SuperAlgebra
        self.embedding = embedding      # elements of the ambient map algebra
        self.provenance = provenance    # list of (s, g_element, a_index)
        self.L = L
        self.A = A
        self.nu = nu
        self.ambient = ambient          # the full map algebra

    @property
    def dim(self):
        return self.algebra.dim


def equivariant_map_subalgebra(L, A, nu, mapalg=None, grading=None):
    """Fixed points of the diagonal action on g (x) A, built as the direct
    sum of g_s (x) A_{-s} and verified against the kernel of the diagonal
    action computed independently."""
    from .folding import eigenspace_decomposition
    if nu.order != A.order:
        raise DefectError("automorphism order %d, coefficient action order %d"
                          % (nu.order, A.order))
    if mapalg is None:
        mapalg = map_superalgebra(L, A)
    if grading is None:
        grading = eigenspace_decomposition(L, nu)
    m = nu.order
    vectors = []
    provenance = []
    for s in range(m):
        for gv in grading.components[s]:
            for p in A.component((-s) % m):
                one = CycScalar.one(L.m)
                vectors.append(tensor_element(L, A, gv, {p: one}))
                provenance.append((s, gv, p))

    # independent fixed-point computation: kernel of (nu (x) sigma - id)
    NA = A.dim
    dim = mapalg.dim
    D = SparseMatrix(dim, dim, L.m)
    zeta = zeta_in(L.m, m)
    sigma_diag = []
    for p in range(NA):
        lam = CycScalar.one(L.m)
        for _ in range(A.grades[p]):
            lam = lam * zeta
        sigma_diag.append(lam)
    for (k, i), v in nu.matrix.entries.items():
        for p in range(NA):
            D.entries[(k * NA + p, i * NA + p)] = v * sigma_diag[p]
    I = SparseMatrix.identity(dim, L.m)
    for rc, v in I.entries.items():
        cur = D.entries.get(rc, CycScalar.zero(L.m))
        d = cur - v
        if d.is_zero():
            D.entries.pop(rc, None)
        else:
            D.entries[rc] = d
    _, fixed, _ = row_reduce(D)
    span = Echelon(L.m)
    for v in fixed:
        span.add(v)
    if len(fixed) != len(vectors):
        raise DefectError("fixed-point dimension %d, graded construction %d"
                          % (len(fixed), len(vectors)))
    for v in vectors:
        if not span.contains(v):
            raise DefectError("graded vector is not a fixed point")

    sub, emb = mapalg.algebra_on_subspace(
        vectors, [mapalg.parity_of(v) for v in vectors],
        name="(%s)^Z%d" % (mapalg.name, m))
    return EqMapAlgebra(sub, emb, provenance, L, A, nu, mapalg)
