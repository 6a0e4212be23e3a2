"""Constructors for the basic classical families sl(m|n) and osp(m|2n),
with Cartan subalgebras, root systems, simple bases, triangular
decompositions and the distinguished Z-grading.

Conventions:
  * sl(m|n): supertraceless matrices on C^(m|n), diagonal order
    (eps_1..eps_m | delta_1..delta_n); Cartan basis elements listed first.
  * osp(m|2n): invariance algebra of the bilinear form with antidiagonal
    symmetric block on the even space and split symplectic block on the odd
    space, so the Cartan is the diagonal part.
  * Root functionals are exact coordinate vectors against the chosen Cartan
    basis; there is no symbolic eps/delta layer.
"""

from .scalars import CycScalar, Q
from .linalg import SparseMatrix, Echelon, Coordinatizer, row_reduce, solve
from .algebra import SuperAlgebra, AlgebraError


class FamilyError(ValueError):
    pass


class DefectError(RuntimeError):
    "An exact computation contradicts a structural expectation."


def build_sl(m, n):
    """sl(m|n), m != n, as supertraceless (m+n) x (m+n) matrices."""
    if m == n:
        raise FamilyError("sl(n|n) is not supported (quotient family)")
    if m < 1 or n < 1 or m + n > 8:
        raise FamilyError("sl(%d|%d) outside the supported range" % (m, n))
    N = m + n
    cm = 1
    one = CycScalar.one(cm)

    def unit(a, b):
        M = SparseMatrix(N, N, cm)
        M.entries[(a, b)] = one
        return M

    block = lambda a: 0 if a < m else 1
    mats, labels, parities = [], [], []
    # Cartan: consecutive differences inside each block, str-neutral joiner
    for i in range(1, m):
        M = unit(i - 1, i - 1)
        M.entries[(i, i)] = -one
        mats.append(M); labels.append("h%d" % i); parities.append(0)
    M = unit(m - 1, m - 1)
    M.entries[(m, m)] = one   # str(E_mm + E_{m+1,m+1}) = 1 - 1 = 0
    mats.append(M); labels.append("h%d" % m); parities.append(0)
    for j in range(1, n):
        M = unit(m + j - 1, m + j - 1)
        M.entries[(m + j, m + j)] = -one
        mats.append(M); labels.append("h%d" % (m + j)); parities.append(0)
    for a in range(N):
        for b in range(N):
            if a != b:
                mats.append(unit(a, b))
                labels.append("E%d_%d" % (a + 1, b + 1))
                parities.append((block(a) + block(b)) % 2)
    block_parities = tuple(block(a) for a in range(N))
    L = SuperAlgebra.from_matrices("sl(%d|%d)" % (m, n), cm, labels, parities,
                                   mats, block_parities)
    assert L.dim == N * N - 1
    return L


def build_osp(m, two_n, conductor=1):
    """osp(m|2n): matrices preserving an antidiagonal symmetric form on the
    even space and a split symplectic form on the odd space."""
    if two_n % 2 != 0 or two_n < 2:
        raise FamilyError("odd symplectic dimension %d" % two_n)
    n = two_n // 2
    if m < 1 or m > 5 or two_n > 4:
        raise FamilyError("osp(%d|%d) outside the supported range" % (m, two_n))
    N = m + two_n
    cm = conductor
    one = CycScalar.one(cm)
    block = lambda a: 0 if a < m else 1

    # Gram matrix of the defining form
    B = SparseMatrix(N, N, cm)
    for i in range(m):
        B.entries[(i, m - 1 - i)] = one
    for i in range(n):
        B.entries[(m + i, m + two_n - 1 - i)] = one
        B.entries[(m + two_n - 1 - i, m + i)] = -one

    def invariance_kernel(parity):
        # unknowns: entries X[r,c] with par(r)+par(c) = parity
        slots = [(r, c) for r in range(N) for c in range(N)
                 if (block(r) + block(c)) % 2 == parity]
        index = {rc: k for k, rc in enumerate(slots)}
        rows = []
        for a in range(N):
            for b in range(N):
                row = {}
                # sum_c X[c,a] B[c,b] + (-1)^{parity*par(a)} sum_c X[c,b] B[a,c] = 0
                for c in range(N):
                    v = B.entries.get((c, b))
                    if v is not None and (c, a) in index:
                        k = index[(c, a)]
                        row[k] = row.get(k, CycScalar.zero(cm)) + v
                sign = -1 if (parity * block(a)) % 2 else 1
                for c in range(N):
                    v = B.entries.get((a, c))
                    if v is not None and (c, b) in index:
                        k = index[(c, b)]
                        t = v if sign > 0 else -v
                        row[k] = row.get(k, CycScalar.zero(cm)) + t
                row = {k: v for k, v in row.items() if not v.is_zero()}
                if row:
                    rows.append(row)
        M = SparseMatrix.from_rows(len(rows), len(slots), cm, rows)
        _, kernel, _ = row_reduce(M)
        mats = []
        for v in kernel:
            X = SparseMatrix(N, N, cm)
            for k, val in v.items():
                X.entries[slots[k]] = val
            mats.append(X)
        return mats

    mats, labels, parities = [], [], []
    for p in (0, 1):
        for X in invariance_kernel(p):
            r, c = min(X.entries)   # leading slot, deterministic label
            mats.append(X)
            labels.append("%s%d_%d" % ("x" if p == 0 else "y", r + 1, c + 1))
            parities.append(p)
    L = SuperAlgebra.from_matrices("osp(%d|%d)" % (m, two_n), cm, labels,
                                   parities, mats, tuple(block(a) for a in range(N)))
    expected = m * (m - 1) // 2 + n * (2 * n + 1) + 2 * m * n
    assert L.dim == expected, (L.dim, expected)
    return L


# ----------------------------------------------------------------------

def cartan_subalgebra(L):
    """Ordered basis (list of elements) of the diagonal subalgebra in the
    stored matrix realization."""
    if L.realization is None:
        raise AlgebraError("no matrix realization stored")
    N = L.realization[0].rows
    # rows of the constraint matrix: one per off-diagonal slot
    rows = {}
    for i, M in enumerate(L.realization):
        for (r, c), v in M.entries.items():
            if r != c:
                rows.setdefault((r, c), {})[i] = v
    Mx = SparseMatrix.from_rows(len(rows), L.dim, L.m,
                                [rows[k] for k in sorted(rows)])
    _, kernel, _ = row_reduce(Mx)
    basis = [v for v in kernel]
    for a in range(len(basis)):
        for b in range(a, len(basis)):
            if L.bracket(basis[a], basis[b]):
                raise DefectError("diagonal subalgebra is not abelian")
    return basis


class RootSystem:
    def __init__(self, cartan, roots, m):
        self.cartan = cartan        # list of elements of L
        self.m = m
        # roots: list of (alpha tuple[CycScalar], parity, [elements])
        self.roots = sorted(roots, key=lambda r: tuple(x.sort_key() for x in r[0]))
        self._coord = None

    @property
    def rank(self):
        return len(self.cartan)

    def even_roots(self):
        return [r for r in self.roots if r[1] == 0]

    def odd_roots(self):
        return [r for r in self.roots if r[1] == 1]

    def coordinatizer(self, dim):
        if self._coord is None:
            self._coord = Coordinatizer(self.m, dim)
            for h in self.cartan:
                self._coord.add(h)
        return self._coord

    def evaluate(self, alpha, h_elem, ambient_dim):
        "alpha(h) for h in the Cartan span, alpha a functional tuple."
        coords = self.coordinatizer(ambient_dim).express(h_elem)
        if coords is None:
            raise AlgebraError("element is not in the Cartan span")
        acc = CycScalar.zero(self.m)
        for k, c in coords.items():
            acc = acc + alpha[k] * c
        return acc


def root_decomposition(L, cartan):
    """Simultaneous ad-eigenspace decomposition of L under the Cartan basis.

    Candidate eigenvalues are read off the diagonal realizations, and every
    split is an exact kernel computation; a non-diagonalizable action is
    reported as a defect rather than silently mis-split."""
    diag_vals = []
    for h in cartan:
        H = L.realization_of(h)
        d = [H.entries.get((a, a), CycScalar.zero(L.m)) for a in range(H.rows)]
        for (r, c) in H.entries:
            if r != c:
                raise DefectError("Cartan element is not diagonal in the realization")
        diag_vals.append(d)

    even_idx = [i for i in range(L.dim) if L.parities[i] == 0]
    odd_idx = [i for i in range(L.dim) if L.parities[i] == 1]
    spaces = []
    for par, idxs in ((0, even_idx), (1, odd_idx)):
        if idxs:
            basis = [{i: CycScalar.one(L.m)} for i in idxs]
            spaces.append((par, (), basis))

    for k, h in enumerate(cartan):
        adh = L.ad(h)
        cands = sorted({(da - db).sort_key() for da in diag_vals[k] for db in diag_vals[k]})
        cand_scalars = [CycScalar(L.m, c) for c in cands]
        new_spaces = []
        for par, weight, basis in spaces:
            remaining = len(basis)
            for s in cand_scalars:
                if remaining == 0:
                    break
                # kernel of (ad h - s) restricted to span(basis)
                cols = []
                for v in basis:
                    w = adh.mul_vec(v)
                    w = {kk: vv for kk, vv in
                         _vec_sub(w, {kk: vv * s for kk, vv in v.items()}).items()}
                    cols.append(w)
                rows = {}
                for j, w in enumerate(cols):
                    for i, vv in w.items():
                        rows.setdefault(i, {})[j] = vv
                M = SparseMatrix.from_rows(len(rows), len(basis), L.m,
                                           [rows[i] for i in sorted(rows)])
                _, kern, _ = row_reduce(M)
                if kern:
                    sub = []
                    for gamma in kern:
                        vec = {}
                        for j, g in gamma.items():
                            vec = _vec_addsc(vec, basis[j], g)
                        sub.append(vec)
                    new_spaces.append((par, weight + (s,), sub))
                    remaining -= len(kern)
            if remaining != 0:
                raise DefectError("ad(h_%d) does not act semisimply (defect %d)"
                                  % (k, remaining))
        spaces = new_spaces

    zero = tuple(CycScalar.zero(L.m) for _ in cartan)
    roots = []
    zero_space = None
    for par, weight, basis in spaces:
        if weight == zero:
            if par == 0:
                zero_space = basis
            else:
                raise DefectError("odd vectors centralize the Cartan")
        else:
            roots.append((weight, par, basis))
    if zero_space is None or len(zero_space) != len(cartan):
        raise DefectError("zero-weight space differs from the Cartan")
    rs = RootSystem(cartan, roots, L.m)
    total = sum(len(b) for _, _, b in rs.roots) + len(cartan)
    if total != L.dim:
        raise DefectError("root space dimensions do not sum to dim L")
    return rs


def _vec_sub(a, b):
    out = dict(a)
    for k, v in b.items():
        if k in out:
            d = out[k] - v
            if d.is_zero():
                del out[k]
            else:
                out[k] = d
        else:
            out[k] = -v
    return out


def _vec_addsc(acc, v, scale):
    out = dict(acc)
    for k, val in v.items():
        t = val * scale
        if k in out:
            s = out[k] + t
            if s.is_zero():
                del out[k]
            else:
                out[k] = s
        else:
            if not t.is_zero():
                out[k] = t
    return out


# ----------------------------------------------------------------------
# Simple systems

class RootBase:
    "A choice of simple roots with the induced positive/negative partition."

    def __init__(self, rs, simples, positives):
        self.rs = rs
        self.simples = simples        # list of root records (alpha, parity, vecs)
        self.positives = positives    # list of root records
        self._expansions = {}

    @property
    def parities(self):
        return tuple(r[1] for r in self.simples)

    def odd_simple_indices(self):
        return [i for i, r in enumerate(self.simples) if r[1] == 1]

    def expand(self, alpha):
        "Integer coefficients of a root over the simple roots."
        key = tuple(x.sort_key() for x in alpha)
        if key in self._expansions:
            return self._expansions[key]
        r = len(alpha)
        ns = len(self.simples)
        M = SparseMatrix(r, ns, self.rs.m)
        for j, (beta, _, _) in enumerate(self.simples):
            for i in range(r):
                M[i, j] = beta[i]
        rhs = {i: alpha[i] for i in range(r) if not alpha[i].is_zero()}
        sol = solve(M, rhs)
        if sol is None:
            raise DefectError("root does not lie in the span of the base")
        coeffs = []
        for j in range(ns):
            v = sol.get(j, CycScalar.zero(self.rs.m))
            if not v.is_rational() or v.rational_value().denominator != 1:
                raise DefectError("non-integer coefficient over the base")
            coeffs.append(int(v.rational_value()))
        if not (all(c >= 0 for c in coeffs) or all(c <= 0 for c in coeffs)):
            raise DefectError("mixed-sign coefficients over the base")
        out = tuple(coeffs)
        self._expansions[key] = out
        return out

    def height(self, alpha):
        return sum(self.expand(alpha))


def positive_system(rs, functional):
    """Split the roots by the sign of a rational linear functional given as
    coefficients against the Cartan basis.  The functional must be nonzero
    on every root."""
    pos, neg = [], []
    fq = [Q(c) for c in functional]
    for rec in rs.roots:
        val = Q(0)
        for k, x in enumerate(rec[0]):
            if not x.is_rational():
                raise DefectError("root coordinate is irrational; choose a finer split")
            val += fq[k] * x.rational_value()
        if val > 0:
            pos.append(rec)
        elif val < 0:
            neg.append(rec)
        else:
            raise DefectError("functional vanishes on a root")
    return pos, neg


def base_from_functional(rs, functional):
    "Simple roots of the positive system of the functional, checked to be a base."
    pos, _ = positive_system(rs, functional)
    alphas = [r[0] for r in pos]
    keyset = {tuple(x.sort_key() for x in a) for a in alphas}
    simples = []
    for rec in pos:
        a = rec[0]
        decomposable = False
        for b in alphas:
            diff = tuple(x - y for x, y in zip(a, b))
            dkey = tuple(x.sort_key() for x in diff)
            if dkey != tuple(CycScalar.zero(rs.m).sort_key() for _ in a) \
                    and dkey in keyset and tuple(x.sort_key() for x in b) in keyset:
                decomposable = True
                break
        if not decomposable:
            simples.append(rec)
    simples.sort(key=lambda r: tuple(x.sort_key() for x in r[0]))
    base = RootBase(rs, simples, pos)
    for rec in pos:
        base.expand(rec[0])   # raises DefectError if not a genuine base
    return base


def axis_functionals(rank, big=1024):
    "Deterministic enumeration of lexicographic-weight coordinate functionals."
    import itertools
    out = []
    for perm in itertools.permutations(range(rank)):
        for signs in itertools.product((1, -1), repeat=rank):
            c = [0] * rank
            for pos, axis in enumerate(perm):
                c[axis] = signs[pos] * big ** (rank - 1 - pos)
            out.append(tuple(c))
    return out


def diagonal_functionals(L, rs):
    """Functionals realized by Cartan elements whose realization diagonal
    follows a prescribed strict ordering of the diagonal positions.  These
    reach the standard and the alternating diagonal orders, which the pure
    coordinate-lexicographic family can miss."""
    import itertools
    if L.realization is None:
        return []
    N = L.realization[0].rows
    r = rs.rank
    cm = L.m
    # diagonal profile of each Cartan basis element
    D = []
    for h in rs.cartan:
        H = L.realization_of(h)
        D.append([H.entries.get((a, a), CycScalar.zero(cm)) for a in range(N)])
    # directions invisible to every root: u with u_row = u_col on all slots
    slot_pairs = set()
    for alpha, par, vecs in rs.roots:
        X = L.realization_of(vecs[0])
        for (a, b) in X.entries:
            slot_pairs.add((a, b))
    rows = []
    for (a, b) in sorted(slot_pairs):
        rows.append({a: CycScalar.one(cm), b: CycScalar.of(cm, -1)})
    _, invis, _ = row_reduce(SparseMatrix.from_rows(len(rows), N, cm, rows))
    t = len(invis)
    # solve [D | invis] x = w for each ordering w of the diagonal positions
    M = SparseMatrix(N, r + t, cm)
    for k in range(r):
        for a in range(N):
            M[a, k] = D[k][a]
    for j, u in enumerate(invis):
        for a, v in u.items():
            M[a, r + j] = v
    if N <= 6:
        perms = itertools.permutations(range(N))
    else:
        ordered = tuple(range(N))
        perms = {ordered, ordered[::-1]}
        # block-descending and interleaved patterns at larger sizes
        evens = [a for a in range(N) if L.block_parities[a] == 0]
        odds = [a for a in range(N) if L.block_parities[a] == 1]
        perms.add(tuple(odds + evens))
        inter = []
        for i in range(max(len(evens), len(odds))):
            if i < len(evens):
                inter.append(evens[i])
            if i < len(odds):
                inter.append(odds[i])
        perms.add(tuple(inter))
        perms = sorted(perms)
    out = []
    for perm in perms:
        w = {}
        for height, pos in enumerate(perm):
            w[pos] = CycScalar.of(cm, N - height)
        x = solve(M, w)
        if x is None:
            continue
        c = []
        ok = True
        for k in range(r):
            v = x.get(k, CycScalar.zero(cm))
            if not v.is_rational():
                ok = False
                break
            c.append(v.rational_value())
        if ok:
            out.append(tuple(c))
    return out


def all_bases(L, rs):
    "All distinct simple systems reachable by the deterministic functional family."
    funcs = diagonal_functionals(L, rs)
    if rs.rank <= 4:   # the coordinate-lex family blows up factorially
        funcs = funcs + axis_functionals(rs.rank)
    seen = {}
    order = []
    for f in funcs:
        try:
            pos, _ = positive_system(rs, f)
        except DefectError:
            continue
        key = frozenset(tuple(x.sort_key() for x in r[0]) for r in pos)
        if key in seen:
            continue
        try:
            seen[key] = (f, base_from_functional(rs, f))
            order.append(key)
        except DefectError:
            continue
    return [seen[k] for k in order]


def distinguished_base(L, rs):
    """A base with exactly one odd simple root (the distinguished choice),
    found by deterministic search over the functional family."""
    for f, base in all_bases(L, rs):
        if len(base.odd_simple_indices()) == 1:
            return base
    raise DefectError("no base with a unique odd simple root found")


# ----------------------------------------------------------------------

class TriangularDecomposition:
    def __init__(self, L, rs, base, n_minus, h, n_plus, chevalley):
        self.L = L
        self.rs = rs
        self.base = base
        self.n_minus = n_minus    # list of (alpha, parity, element)
        self.h = h                # list of elements
        self.n_plus = n_plus      # list of (alpha, parity, element)
        self.chevalley = chevalley  # list of (e, f, h) elements per simple root

    def cartan_matrix(self):
        "a[i][j] = alpha_j(h_i) as CycScalar."
        r = len(self.chevalley)
        out = []
        for i in range(r):
            hi = self.chevalley[i][2]
            row = [self.rs.evaluate(self.base.simples[j][0], hi, self.L.dim)
                   for j in range(r)]
            out.append(row)
        return out

    def canonical_cartan_matrix(self):
        """Cartan matrix with isotropic rows rescaled so their first nonzero
        entry is 1 (non-isotropic rows are already pinned by a_ii = 2)."""
        A = self.cartan_matrix()
        out = []
        for i, row in enumerate(A):
            if row[i].is_zero():
                scale = None
                for v in row:
                    if not v.is_zero():
                        scale = v.inverse()
                        break
                if scale is not None:
                    row = [v * scale for v in row]
            out.append(row)
        return out


def triangular_decomposition(L, rs, base):
    npl = []
    for alpha, par, vecs in base.positives:
        for v in vecs:
            npl.append((alpha, par, v))
    pos_keys = {tuple(x.sort_key() for x in r[0]) for r in base.positives}
    nmi = []
    for alpha, par, vecs in rs.roots:
        if tuple(x.sort_key() for x in alpha) in pos_keys:
            continue
        for v in vecs:
            nmi.append((alpha, par, v))
    if len(npl) + len(nmi) + len(rs.cartan) != L.dim:
        raise DefectError("triangular pieces do not fill the algebra")

    by_key = {tuple(x.sort_key() for x in a): (a, p, vs) for a, p, vs in rs.roots}
    chevalley = []
    two = CycScalar.of(L.m, 2)
    for alpha, par, vecs in base.simples:
        if len(vecs) != 1:
            raise DefectError("simple root space is not one dimensional")
        e = vecs[0]
        neg = by_key[tuple((-x).sort_key() for x in alpha)]
        if len(neg[2]) != 1:
            raise DefectError("negative simple root space is not one dimensional")
        f = neg[2][0]
        h = L.bracket(e, f)
        if not h:
            raise DefectError("[e, f] = 0 for a simple root")
        c = rs.evaluate(alpha, h, L.dim)
        if not c.is_zero():
            scale = two * c.inverse()
            f = {k: v * scale for k, v in f.items()}
            h = L.bracket(e, f)
        chevalley.append((e, f, h))
    return TriangularDecomposition(L, rs, base, nmi, list(rs.cartan), npl, chevalley)


def z_grading(L, td):
    """Grade root spaces by the coefficient of the unique odd simple root;
    classify the component shape as type I or type II."""
    odd = td.base.odd_simple_indices()
    if len(odd) != 1:
        raise DefectError("base has %d odd simple roots, need exactly 1" % len(odd))
    s = odd[0]
    comps = {0: list(td.h)}
    grades_even, grades_odd = {0}, set()
    for alpha, par, v in td.n_plus + td.n_minus:
        g = td.base.expand(alpha)[s]
        comps.setdefault(g, []).append(v)
        (grades_even if par == 0 else grades_odd).add(g)
    if grades_even == {0} and grades_odd <= {-1, 1}:
        kind = "I"
    elif grades_even <= {-2, 0, 2} and grades_odd <= {-1, 1} and 2 in grades_even:
        kind = "II"
    else:
        raise DefectError("grading shape matches neither type: even %s odd %s"
                          % (sorted(grades_even), sorted(grades_odd)))
    return comps, kind
