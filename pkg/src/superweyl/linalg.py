"""Sparse exact linear algebra over Q(zeta_m).

Matrices are dictionaries (row, col) -> CycScalar with zeros omitted and a
single conductor shared by all entries.  Row reduction is plain
Gauss-Jordan with deterministic pivoting: leftmost column first, then
smallest row index.
"""

from .scalars import CycScalar, ConductorError


class SparseMatrix:
    __slots__ = ("rows", "cols", "m", "entries")

    def __init__(self, rows, cols, m, entries=None):
        self.rows = rows
        self.cols = cols
        self.m = m
        self.entries = {}
        if entries:
            for (r, c), v in entries.items():
                self[r, c] = v

    def __getitem__(self, rc):
        v = self.entries.get(rc)
        return v if v is not None else CycScalar.zero(self.m)

    def __setitem__(self, rc, v):
        r, c = rc
        if not (0 <= r < self.rows and 0 <= c < self.cols):
            raise IndexError(rc)
        if not isinstance(v, CycScalar):
            raise TypeError("entries must be CycScalar")
        if v.m != self.m:
            raise ConductorError("entry conductor %d, matrix conductor %d" % (v.m, self.m))
        if v.is_zero():
            self.entries.pop(rc, None)
        else:
            self.entries[rc] = v

    def row(self, r):
        "Sparse row as {col: scalar}."
        return {c: v for (rr, c), v in self.entries.items() if rr == r}

    def rows_sparse(self):
        out = [dict() for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def transpose(self):
        t = SparseMatrix(self.cols, self.rows, self.m)
        for (r, c), v in self.entries.items():
            t.entries[(c, r)] = v
        return t

    def mul_vec(self, vec):
        "Matrix times sparse vector {index: scalar} -> sparse vector."
        out = {}
        for (r, c), v in self.entries.items():
            x = vec.get(c)
            if x is not None:
                acc = out.get(r)
                term = v * x
                out[r] = term if acc is None else acc + term
        return {k: v for k, v in out.items() if not v.is_zero()}

    def matmul(self, other):
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        if self.m != other.m:
            raise ConductorError("conductor mismatch")
        out = SparseMatrix(self.rows, other.cols, self.m)
        by_row = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, []).append((c, v))
        acc = {}
        for (r, k), v in self.entries.items():
            for c, w in by_row.get(k, ()):
                key = (r, c)
                t = v * w
                if key in acc:
                    acc[key] = acc[key] + t
                else:
                    acc[key] = t
        for key, v in acc.items():
            if not v.is_zero():
                out.entries[key] = v
        return out

    def is_zero(self):
        return not self.entries

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.m) == (other.rows, other.cols, other.m) \
            and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, self.m, frozenset(self.entries.items())))

    @staticmethod
    def identity(n, m):
        M = SparseMatrix(n, n, m)
        one = CycScalar.one(m)
        for i in range(n):
            M.entries[(i, i)] = one
        return M

    @staticmethod
    def from_rows(rows, cols, m, sparse_rows):
        M = SparseMatrix(rows, cols, m)
        for r, row in enumerate(sparse_rows):
            for c, v in row.items():
                M[r, c] = v
        return M


def vec_add(a, b):
    out = dict(a)
    for k, v in b.items():
        if k in out:
            s = out[k] + v
            if s.is_zero():
                del out[k]
            else:
                out[k] = s
        else:
            out[k] = v
    return out

def vec_scale(a, s):
    if s.is_zero():
        return {}
    return {k: v * s for k, v in a.items()}

def vec_sub_scaled(a, b, s):
    "a - s*b for sparse vectors."
    if s.is_zero():
        return dict(a)
    out = dict(a)
    for k, v in b.items():
        t = v * s
        if k in out:
            d = out[k] - t
            if d.is_zero():
                del out[k]
            else:
                out[k] = d
        else:
            out[k] = -t
    return out


class Echelon:
    """Incrementally maintained reduced echelon basis of sparse vectors.

    Rows are fully reduced against each other, pivots normalised to 1 and
    kept sorted by pivot column, so the stored basis is the RREF of the
    span regardless of insertion order.
    """

    def __init__(self, m):
        self.m = m
        self.pivots = {}   # pivot column -> row (sparse dict)

    def reduce(self, vec):
        "Fully reduce vec against the basis; returns the residue."
        # One ascending pass suffices: a stored row has support only at its
        # pivot and at free columns, so eliminations never reintroduce a
        # smaller pivot column.
        v = dict(vec)
        for c in sorted(vec):
            row = self.pivots.get(c)
            if row is not None:
                coeff = v.get(c)
                if coeff is not None and not coeff.is_zero():
                    v = vec_sub_scaled(v, row, coeff)
        return v

    def reduce_with_combo(self, vec):
        "Reduce vec; also return {pivot_col: coefficient} of the combination used."
        v = dict(vec)
        combo = {}
        for c in sorted(vec):
            row = self.pivots.get(c)
            if row is not None:
                coeff = v.get(c)
                if coeff is not None and not coeff.is_zero():
                    combo[c] = coeff
                    v = vec_sub_scaled(v, row, coeff)
        return v, combo

    def add(self, vec):
        """Insert vec into the span.  Returns the new pivot column if the
        rank grew, else None."""
        v = self.reduce(vec)
        if not v:
            return None
        piv = min(v)
        inv = v[piv].inverse()
        row = {k: val * inv for k, val in v.items()}
        # back-substitute into existing rows to stay fully reduced
        for c, other in self.pivots.items():
            if piv in other:
                self.pivots[c] = vec_sub_scaled(other, row, other[piv])
        self.pivots[piv] = row
        return piv

    def contains(self, vec):
        return not self.reduce(vec)

    @property
    def rank(self):
        return len(self.pivots)

    def basis_rows(self):
        "RREF rows ordered by pivot column."
        return [self.pivots[c] for c in sorted(self.pivots)]

    def pivot_columns(self):
        return sorted(self.pivots)


class Coordinatizer:
    """Expresses vectors over a fixed independent family.

    Augmented-echelon trick: each added vector carries a unit tag column, so
    reducing a bare vector leaves its (negated) coordinates in the tags.
    """

    def __init__(self, m, dim):
        self.m = m
        self.dim = dim
        self.ech = Echelon(m)
        self.count = 0

    def add(self, vec):
        aug = dict(vec)
        aug[self.dim + self.count] = CycScalar.one(self.m)
        piv = self.ech.add(aug)
        assert piv is not None and piv < self.dim, "dependent vector added to Coordinatizer"
        self.count += 1
        return self.count - 1

    def express(self, vec):
        "Coordinates {index: scalar} of vec over the added family, or None."
        res = self.ech.reduce(dict(vec))
        out = {}
        for k, v in res.items():
            if k < self.dim:
                return None
            out[k - self.dim] = -v
        return out

    def contains(self, vec):
        return self.express(vec) is not None


def row_reduce(M):
    """Reduced row echelon data of a SparseMatrix.

    Returns (row_basis, kernel_basis, rank): row_basis are the nonzero RREF
    rows (sparse dicts), kernel_basis spans {v : M v = 0} with one vector
    per free column (entry 1 at the free column), both deterministically
    ordered.
    """
    ech = Echelon(M.m)
    for row in M.rows_sparse():
        if row:
            ech.add(row)
    rank = ech.rank
    row_basis = ech.basis_rows()
    pivset = set(ech.pivot_columns())
    kernel = []
    one = CycScalar.one(M.m)
    for c in range(M.cols):
        if c in pivset:
            continue
        v = {c: one}
        for pc, row in ech.pivots.items():
            coeff = row.get(c)
            if coeff is not None:
                v[pc] = -coeff
        kernel.append(v)
    assert rank + len(kernel) == M.cols
    return row_basis, kernel, rank


def kernel_basis(M):
    return row_reduce(M)[1]


def solve(M, rhs):
    """One exact solution x of M x = rhs (sparse dicts), or None.

    Deterministic: reduces the augmented system and reads the particular
    solution off the pivot columns (free variables set to zero).
    """
    aug_col = M.cols
    ech = Echelon(M.m)
    rows = M.rows_sparse()
    for r in range(M.rows):
        row = dict(rows[r])
        if r in rhs:
            row[aug_col] = rhs[r]
        if row:
            ech.add(row)
    sol = {}
    for pc in ech.pivot_columns():
        if pc == aug_col:
            return None  # inconsistent
        val = ech.pivots[pc].get(aug_col)
        if val is not None:
            sol[pc] = val
    # row ordering above ties the augmented column along; validate exactly
    check = M.mul_vec(sol)
    target = {k: v for k, v in rhs.items() if not v.is_zero()}
    return sol if check == target else None
