"""Finite-dimensional Lie superalgebras given by structure constants.

A SuperAlgebra stores an ordered homogeneous basis with parities and the
sparse brackets [b_i, b_j] for i <= j only; the swapped bracket is
reconstructed through the sign rule, so skew-supersymmetry holds by
construction and only the grading and the super Jacobi identity remain to
be checked.  Elements are sparse coefficient dictionaries {index: CycScalar}.

An optional matrix realization (square supermatrices) supports the
constructors in `classical` and provides the independent supertrace form.
"""

from .scalars import CycScalar, ConductorError, format_scalar, parse_scalar
from .linalg import SparseMatrix, Echelon, Coordinatizer, vec_add, vec_scale, vec_sub_scaled


class AlgebraError(ValueError):
    pass


class SuperAlgebra:
    def __init__(self, name, m, labels, parities, brackets,
                 realization=None, block_parities=None):
        self.name = name
        self.m = m
        self.labels = tuple(labels)
        self.parities = tuple(int(p) for p in parities)
        assert len(self.labels) == len(self.parities)
        # brackets: {(i, j) with i <= j: {k: CycScalar}}, zero vectors omitted
        self.brackets = {}
        for (i, j), vec in brackets.items():
            assert i <= j
            clean = {k: v for k, v in vec.items() if not v.is_zero()}
            if clean:
                self.brackets[(i, j)] = clean
        self.realization = realization          # list[SparseMatrix] or None
        self.block_parities = block_parities    # parities of matrix rows/cols
        self._ad_cache = {}

    @property
    def dim(self):
        return len(self.labels)

    def dims_by_parity(self):
        even = sum(1 for p in self.parities if p == 0)
        return even, self.dim - even

    def zero(self):
        return {}

    def basis_element(self, i):
        return {i: CycScalar.one(self.m)}

    def check_element(self, x):
        for i, v in x.items():
            if not (0 <= i < self.dim):
                raise AlgebraError("foreign basis index %r" % (i,))
            if v.m != self.m:
                raise ConductorError("element conductor %d, algebra conductor %d"
                                     % (v.m, self.m))

    def parity_of(self, x):
        "Parity of a homogeneous element; raises for mixed parity."
        ps = {self.parities[i] for i, v in x.items() if not v.is_zero()}
        if len(ps) > 1:
            raise AlgebraError("element is not parity-homogeneous")
        return ps.pop() if ps else 0

    def homogeneous_parts(self, x):
        "Split into (even part, odd part)."
        ev, od = {}, {}
        for i, v in x.items():
            (ev if self.parities[i] == 0 else od)[i] = v
        return ev, od

    def bracket_basis(self, i, j):
        "[b_i, b_j] as a sparse vector (never mutate the result)."
        if i <= j:
            return self.brackets.get((i, j), {})
        stored = self.brackets.get((j, i))
        if not stored:
            return {}
        if self.parities[i] and self.parities[j]:
            return stored            # -(-1)^{1} = +1
        return {k: -v for k, v in stored.items()}

    def bracket(self, x, y):
        "Bilinear extension of the structure constants."
        self.check_element(x)
        self.check_element(y)
        acc = {}
        for i, xi in x.items():
            if xi.is_zero():
                continue
            for j, yj in y.items():
                if yj.is_zero():
                    continue
                base = self.bracket_basis(i, j)
                if not base:
                    continue
                s = xi * yj
                for k, v in base.items():
                    t = v * s
                    if k in acc:
                        acc[k] = acc[k] + t
                    else:
                        acc[k] = t
        return {k: v for k, v in acc.items() if not v.is_zero()}

    def ad(self, x):
        "Matrix of y -> [x, y] in the basis order."
        self.check_element(x)
        M = SparseMatrix(self.dim, self.dim, self.m)
        for j in range(self.dim):
            col = self.bracket(x, self.basis_element(j))
            for k, v in col.items():
                M.entries[(k, j)] = v
        return M

    def _ad_basis(self, i):
        M = self._ad_cache.get(i)
        if M is None:
            M = self._ad_cache[i] = self.ad(self.basis_element(i))
        return M

    def supertrace(self, M):
        if M.rows != self.dim or M.cols != self.dim:
            raise AlgebraError("matrix is %dx%d, algebra dimension %d"
                               % (M.rows, M.cols, self.dim))
        acc = CycScalar.zero(self.m)
        for i in range(self.dim):
            v = M.entries.get((i, i))
            if v is not None:
                acc = acc + v if self.parities[i] == 0 else acc - v
        return acc

    def killing_form(self, x, y):
        "str(ad_x ad_y), computed from the sparse entries without a full product."
        A = self.ad(x)
        B = self.ad(y)
        acc = CycScalar.zero(self.m)
        for (i, k), v in A.entries.items():
            w = B.entries.get((k, i))
            if w is not None:
                t = v * w
                acc = acc + t if self.parities[i] == 0 else acc - t
        return acc

    def killing_gram(self, vecs_a=None, vecs_b=None):
        "Gram matrix of the Killing form on two element lists (default: basis)."
        if vecs_a is None:
            vecs_a = [self.basis_element(i) for i in range(self.dim)]
        if vecs_b is None:
            vecs_b = [self.basis_element(i) for i in range(self.dim)]
        G = SparseMatrix(len(vecs_a), len(vecs_b), self.m)
        for a, x in enumerate(vecs_a):
            for b, y in enumerate(vecs_b):
                G[a, b] = self.killing_form(x, y)
        return G

    def realization_of(self, x):
        "Matrix realization of an element, if the algebra carries one."
        if self.realization is None:
            raise AlgebraError("algebra %s has no matrix realization" % self.name)
        n = self.realization[0].rows
        M = SparseMatrix(n, n, self.m)
        for i, c in x.items():
            for rc, v in self.realization[i].entries.items():
                t = v * c
                cur = M.entries.get(rc)
                s = t if cur is None else cur + t
                if s.is_zero():
                    M.entries.pop(rc, None)
                else:
                    M.entries[rc] = s
        return M

    def supertrace_form(self, x, y):
        "str(XY) on realization matrices: the independent invariant form."
        X = self.realization_of(x)
        Y = self.realization_of(y)
        acc = CycScalar.zero(self.m)
        for (i, k), v in X.entries.items():
            w = Y.entries.get((k, i))
            if w is not None:
                t = v * w
                acc = acc + t if self.block_parities[i] == 0 else acc - t
        return acc

    # ------------------------------------------------------------------
    def check_axioms(self):
        """Exhaustive axiom check: grading respect, skew-supersymmetry on
        stored data, super Jacobi on all basis triples i <= j <= k.
        Returns a list of violation strings; empty means pass."""
        report = []
        for (i, j), vec in self.brackets.items():
            want = (self.parities[i] + self.parities[j]) % 2
            for k, v in vec.items():
                if self.parities[k] != want:
                    report.append("grading: [%d,%d] hits %d of parity %d, expected %d"
                                  % (i, j, k, self.parities[k], want))
        for i in range(self.dim):
            if self.parities[i] == 0 and self.brackets.get((i, i)):
                report.append("skew: [%d,%d] nonzero for even index %d" % (i, i, i))
        d = self.dim
        for i in range(d):
            bi = self.basis_element(i)
            pi = self.parities[i]
            for j in range(i, d):
                bj = self.basis_element(j)
                bij = self.bracket_basis(i, j)
                sign_ij = pi * self.parities[j]
                for k in range(j, d):
                    bk = self.basis_element(k)
                    lhs = self.bracket(bi, self.bracket_basis(j, k))
                    rhs = vec_add(self.bracket(bij, bk),
                                  _signed(self.bracket(bj, self.bracket_basis(i, k)), sign_ij))
                    if lhs != rhs:
                        report.append("jacobi: triple (%d,%d,%d)" % (i, j, k))
        return report

    # ------------------------------------------------------------------
    def subalgebra_closure(self, generators, name=None):
        """Smallest bracket-closed homogeneous subspace containing the
        generators, as a standalone SuperAlgebra plus the embedding
        (list of elements of self).  Non-homogeneous generators are split
        into their homogeneous parts first."""
        even = Echelon(self.m)
        odd = Echelon(self.m)
        queue = []
        for g in generators:
            self.check_element(g)
            for part, ech in zip(self.homogeneous_parts(g), (even, odd)):
                if part and ech.add(part) is not None:
                    queue.append(dict(part))
        members = list(queue)
        while queue:
            x = queue.pop(0)
            # [y, x] is +-[x, y]: one direction spans the same subspace
            for y in list(members):
                z = self.bracket(x, y)
                if not z:
                    continue
                ech = even if self.parity_of(z) == 0 else odd
                if ech.add(z) is not None:
                    members.append(z)
                    queue.append(z)
        basis = even.basis_rows() + odd.basis_rows()
        parities = [0] * even.rank + [1] * odd.rank
        return self.algebra_on_subspace(basis, parities, name=name)

    def algebra_on_subspace(self, basis, parities, name=None):
        """Induced structure constants on a bracket-closed independent
        homogeneous family.  Returns (SuperAlgebra, embedding)."""
        coord = Coordinatizer(self.m, self.dim)
        for b in basis:
            coord.add(b)
        brackets = {}
        n = len(basis)
        for a in range(n):
            for b in range(a, n):
                z = self.bracket(basis[a], basis[b])
                if not z:
                    continue
                expr = coord.express(z)
                if expr is None:
                    raise AlgebraError("family is not bracket-closed")
                brackets[(a, b)] = expr
        sub_real = None
        if self.realization is not None:
            sub_real = [self.realization_of(b) for b in basis]
        sub = SuperAlgebra(name or (self.name + ".sub"), self.m,
                           ["s%d" % i for i in range(n)], parities, brackets,
                           realization=sub_real, block_parities=self.block_parities)
        return sub, list(basis)

    # ------------------------------------------------------------------
    @staticmethod
    def from_matrices(name, m, labels, parities, mats, block_parities):
        """Structure constants from a list of supermatrices closed under the
        supercommutator [X,Y] = XY - (-1)^{|X||Y|} YX."""
        n = mats[0].rows
        coord = Coordinatizer(m, n * n)
        flat = lambda M: {r * n + c: v for (r, c), v in M.entries.items()}
        for M in mats:
            coord.add(flat(M))
        brackets = {}
        for i in range(len(mats)):
            for j in range(i, len(mats)):
                C = supercommutator(mats[i], mats[j], parities[i], parities[j])
                if C.is_zero():
                    continue
                expr = coord.express(flat(C))
                if expr is None:
                    raise AlgebraError("matrices are not closed under the bracket")
                brackets[(i, j)] = expr
        return SuperAlgebra(name, m, labels, parities, brackets,
                            realization=list(mats), block_parities=tuple(block_parities))

    @staticmethod
    def from_bracket_fn(name, m, labels, parities, fn):
        "Structure constants from a function (i, j) -> sparse vector, i <= j."
        brackets = {}
        n = len(labels)
        for i in range(n):
            for j in range(i, n):
                vec = fn(i, j)
                if vec:
                    brackets[(i, j)] = vec
        return SuperAlgebra(name, m, labels, parities, brackets)


def _signed(vec, sign_exponent):
    if sign_exponent % 2 == 0:
        return vec
    return {k: -v for k, v in vec.items()}


def supercommutator(X, Y, px, py):
    XY = X.matmul(Y)
    YX = Y.matmul(X)
    out = SparseMatrix(X.rows, X.cols, X.m)
    for rc, v in XY.entries.items():
        out.entries[rc] = v
    for rc, v in YX.entries.items():
        t = v if (px and py) else -v
        cur = out.entries.get(rc)
        s = t if cur is None else cur + t
        if s.is_zero():
            out.entries.pop(rc, None)
        else:
            out.entries[rc] = s
    return out


# ----------------------------------------------------------------------
# Algebra file format (line oriented, canonical, bit-exact round trip)

def write_algebra(L):
    lines = ["algebra %s" % L.name,
             "conductor %d" % L.m,
             "dimension %d" % L.dim,
             "basis"]
    for i in range(L.dim):
        lines.append("%d %d %s" % (i, L.parities[i], L.labels[i]))
    lines.append("brackets")
    for (i, j) in sorted(L.brackets):
        vec = L.brackets[(i, j)]
        terms = "; ".join("%d=%s" % (k, format_scalar(vec[k])) for k in sorted(vec))
        lines.append("%d %d : %s" % (i, j, terms))
    if L.realization is not None:
        lines.append("realization %d %s" % (L.realization[0].rows,
                                            "".join(str(p) for p in L.block_parities)))
        for i, M in enumerate(L.realization):
            terms = "; ".join("%d,%d=%s" % (r, c, format_scalar(M.entries[(r, c)]))
                              for (r, c) in sorted(M.entries))
            lines.append("%d : %s" % (i, terms))
    lines.append("end")
    return "\n".join(lines) + "\n"


def read_algebra(text):
    lines = [ln.rstrip("\n") for ln in text.splitlines()]
    it = iter(lines)
    head = next(it).split()
    assert head[0] == "algebra"
    name = head[1]
    m = int(next(it).split()[1])
    dim = int(next(it).split()[1])
    assert next(it) == "basis"
    labels, parities = [], []
    for _ in range(dim):
        idx, par, label = next(it).split(maxsplit=2)
        assert int(idx) == len(labels)
        labels.append(label)
        parities.append(int(par))
    assert next(it) == "brackets"
    brackets = {}
    realization = None
    block_parities = None
    for ln in it:
        if ln == "end":
            break
        if ln.startswith("realization"):
            _, nstr, parstr = ln.split()
            n = int(nstr)
            block_parities = tuple(int(ch) for ch in parstr)
            realization = []
            for _ in range(dim):
                ln2 = next(it)
                idx, _, rest = ln2.partition(" : ")
                M = SparseMatrix(n, n, m)
                if rest:
                    for term in rest.split("; "):
                        rc, _, sval = term.partition("=")
                        r, c = rc.split(",")
                        M[int(r), int(c)] = parse_scalar(m, sval)
                realization.append(M)
            continue
        ij, _, rest = ln.partition(" : ")
        i, j = (int(t) for t in ij.split())
        vec = {}
        for term in rest.split("; "):
            k, _, sval = term.partition("=")
            vec[int(k)] = parse_scalar(m, sval)
        brackets[(i, j)] = vec
    return SuperAlgebra(name, m, labels, parities, brackets,
                        realization=realization, block_parities=block_parities)
