"""Exact linear algebra over Z, F_p and Q.

Everything here is exact: integer work uses arbitrary-precision ints and
Smith normal forms with tracked unimodular transforms, mod-p work uses
dense elimination on exact small-int arrays, rational work uses Fractions.
No floating point is ever produced.

The central consumer-facing pieces are

* :func:`smith_normal_form` -- U @ M @ V = D with U, V unimodular, the
  diagonal nonnegative and forming a divisibility chain d1 | d2 | ...;
* :func:`cohomology_of_pair` -- the finitely generated abelian group
  ker(d_out)/im(d_in) of a pair of integer matrices,

>>> m = IntMat.from_rows([[2, 4], [6, 8]])
>>> smith_normal_form(m)[1].diagonal()
[2, 4]
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

import numpy as np


class ExactLinError(Exception):
    pass


class CompositionNonzero(ExactLinError):
    """d_out @ d_in != 0 where a cochain pair was required."""


class SolveFailed(ExactLinError):
    """An integer linear system had no integral solution."""


def _divisor_chain(values):
    # Normalise a multiset of nonzero integers into the invariant-factor
    # chain with the same product structure, without factoring anything.
    vals = [abs(int(v)) for v in values if abs(int(v)) != 1]
    if any(v == 0 for v in vals):
        raise ValueError("torsion divisors must be nonzero")
    changed = True
    while changed:
        changed = False
        for i in range(len(vals)):
            for j in range(i + 1, len(vals)):
                a, b = vals[i], vals[j]
                if b % a != 0:
                    g = gcd(a, b)
                    vals[i], vals[j] = g, a * b // g
                    changed = True
        vals = [v for v in vals if v != 1]
        vals.sort()
    return tuple(vals)


class AbGroup:
    """A finitely generated abelian group Z^rank x prod Z/d_i.

    Torsion coefficients are stored as a divisibility chain with every
    entry >= 2.

    >>> AbGroup(1, (2, 4))
    AbGroup(rank=1, torsion=(2, 4))
    >>> AbGroup(0, (6, 4)).torsion     # renormalised to a chain
    (2, 12)
    >>> AbGroup(2).is_free()
    True
    """

    __slots__ = ("rank", "torsion")

    def __init__(self, rank, torsion=()):
        if rank < 0:
            raise ValueError("rank must be >= 0")
        self.rank = int(rank)
        self.torsion = _divisor_chain(torsion)

    def is_trivial(self):
        return self.rank == 0 and not self.torsion

    def is_free(self):
        return not self.torsion

    def is_elementary(self, p=None):
        """True if all torsion is killed by one multiplication by a prime.

        With p given, insist every divisor equals that prime.
        """
        if p is not None:
            return all(d == p for d in self.torsion)
        return all(_is_prime(d) for d in self.torsion)

    def torsion_count(self, p):
        """Number of cyclic summands with order divisible by p."""
        return sum(1 for d in self.torsion if d % p == 0)

    def dim_fp(self, p):
        """dim_Fp (self tensor F_p)."""
        return self.rank + self.torsion_count(p)

    def tor_fp(self, p):
        """dim_Fp Tor_1(self, F_p)."""
        return self.torsion_count(p)

    def to_dict(self):
        return {"rank": self.rank, "torsion": list(self.torsion)}

    def __eq__(self, other):
        return (isinstance(other, AbGroup) and self.rank == other.rank
                and self.torsion == other.torsion)

    def __hash__(self):
        return hash((self.rank, self.torsion))

    def __repr__(self):
        return "AbGroup(rank=%d, torsion=%s)" % (self.rank, self.torsion)

    def __str__(self):
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append("Z^%d" % self.rank)
        parts.extend("Z/%d" % d for d in self.torsion)
        return " + ".join(parts) if parts else "0"


def _is_prime(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class IntMat:
    """Sparse integer matrix with explicit shape.

    Entries live in a dict keyed by (row, col); zero entries are absent.
    Columns are understood as images of source basis vectors.
    """

    __slots__ = ("nrows", "ncols", "entries")

    def __init__(self, nrows, ncols, entries=None):
        self.nrows = int(nrows)
        self.ncols = int(ncols)
        self.entries = {}
        if entries:
            for (i, j), v in entries.items():
                v = int(v)
                if v:
                    if not (0 <= i < self.nrows and 0 <= j < self.ncols):
                        raise IndexError("entry out of shape")
                    self.entries[(i, j)] = v

    @classmethod
    def from_rows(cls, rows):
        nr = len(rows)
        nc = len(rows[0]) if rows else 0
        ent = {}
        for i, row in enumerate(rows):
            if len(row) != nc:
                raise ValueError("ragged rows")
            for j, v in enumerate(row):
                if v:
                    ent[(i, j)] = int(v)
        return cls(nr, nc, ent)

    @classmethod
    def identity(cls, n):
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def zeros(cls, nrows, ncols):
        return cls(nrows, ncols)

    @classmethod
    def from_columns(cls, cols, nrows):
        ent = {}
        for j, col in enumerate(cols):
            for i, v in col.items() if isinstance(col, dict) else enumerate(col):
                if v:
                    ent[(i, j)] = int(v)
        return cls(nrows, len(cols), ent)

    def shape(self):
        return (self.nrows, self.ncols)

    def is_zero(self):
        return not self.entries

    def get(self, i, j):
        return self.entries.get((i, j), 0)

    def column(self, j):
        return {i: v for (i, jj), v in self.entries.items() if jj == j}

    def columns(self):
        cols = [dict() for _ in range(self.ncols)]
        for (i, j), v in self.entries.items():
            cols[j][i] = v
        return cols

    def to_rows(self):
        rows = [[0] * self.ncols for _ in range(self.nrows)]
        for (i, j), v in self.entries.items():
            rows[i][j] = v
        return rows

    def to_numpy_mod(self, p):
        a = np.zeros((self.nrows, self.ncols), dtype=np.int64)
        for (i, j), v in self.entries.items():
            a[i, j] = v % p
        return a

    def transpose(self):
        return IntMat(self.ncols, self.nrows,
                      {(j, i): v for (i, j), v in self.entries.items()})

    def diagonal(self):
        return [self.get(t, t) for t in range(min(self.nrows, self.ncols))
                if self.get(t, t) != 0]

    def matmul(self, other):
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        by_col = [dict() for _ in range(other.ncols)]
        for (k, j), v in other.entries.items():
            by_col[j][k] = v
        by_row = {}
        for (i, k), v in self.entries.items():
            by_row.setdefault(k, []).append((i, v))
        ent = {}
        for j in range(other.ncols):
            acc = {}
            for k, w in by_col[j].items():
                for i, v in by_row.get(k, ()):
                    acc[i] = acc.get(i, 0) + v * w
            for i, v in acc.items():
                if v:
                    ent[(i, j)] = v
        return IntMat(self.nrows, other.ncols, ent)

    def __eq__(self, other):
        return (isinstance(other, IntMat) and self.shape() == other.shape()
                and self.entries == other.entries)

    def __repr__(self):
        return "IntMat(%d x %d, %d nonzero)" % (self.nrows, self.ncols,
                                                len(self.entries))


class _SparseWork:
    # Mutable sparse matrix with row/col indexes for the SNF elimination.

    def __init__(self, mat):
        self.ent = dict(mat.entries)
        self.rows = {}
        self.cols = {}
        for (i, j) in self.ent:
            self.rows.setdefault(i, set()).add(j)
            self.cols.setdefault(j, set()).add(i)

    def get(self, i, j):
        return self.ent.get((i, j), 0)

    def set(self, i, j, v):
        if v:
            self.ent[(i, j)] = v
            self.rows.setdefault(i, set()).add(j)
            self.cols.setdefault(j, set()).add(i)
        else:
            if (i, j) in self.ent:
                del self.ent[(i, j)]
                self.rows[i].discard(j)
                self.cols[j].discard(i)

    def row_add(self, i, k, q):
        # row_i += q * row_k
        if q == 0:
            return
        for j in list(self.rows.get(k, ())):
            self.set(i, j, self.get(i, j) + q * self.ent[(k, j)])

    def col_add(self, j, k, q):
        # col_j += q * col_k
        if q == 0:
            return
        for i in list(self.cols.get(k, ())):
            self.set(i, j, self.get(i, j) + q * self.ent[(i, k)])

    def row_swap(self, i, k):
        if i == k:
            return
        js = set(self.rows.get(i, set())) | set(self.rows.get(k, set()))
        for j in js:
            a, b = self.get(i, j), self.get(k, j)
            self.set(i, j, b)
            self.set(k, j, a)

    def col_swap(self, j, k):
        if j == k:
            return
        is_ = set(self.cols.get(j, set())) | set(self.cols.get(k, set()))
        for i in is_:
            a, b = self.get(i, j), self.get(i, k)
            self.set(i, j, b)
            self.set(i, k, a)

    def row_neg(self, i):
        for j in list(self.rows.get(i, ())):
            self.ent[(i, j)] = -self.ent[(i, j)]


class _OpLog:
    # Accumulates elementary ops into a unimodular transform kept as
    # dict-of-dicts; rows=True tracks U (left), rows=False tracks V (right).

    def __init__(self, n, rows):
        self.n = n
        self.rows = rows
        self.data = {i: {i: 1} for i in range(n)}

    def add(self, i, k, q):
        # mirrors row_i += q row_k  (or col_i += q col_k)
        tgt, src = self.data[i], self.data[k]
        for key, v in src.items():
            nv = tgt.get(key, 0) + q * v
            if nv:
                tgt[key] = nv
            else:
                tgt.pop(key, None)

    def swap(self, i, k):
        self.data[i], self.data[k] = self.data[k], self.data[i]

    def neg(self, i):
        self.data[i] = {k: -v for k, v in self.data[i].items()}

    def to_intmat(self):
        ent = {}
        if self.rows:
            for i, row in self.data.items():
                for j, v in row.items():
                    ent[(i, j)] = v
        else:
            for j, col in self.data.items():
                for i, v in col.items():
                    ent[(i, j)] = v
        return IntMat(self.n, self.n, ent)


def smith_normal_form(mat, need_u=True, need_v=True):
    """Return (U, D, V) with U @ mat @ V = D in Smith normal form.

    D has nonnegative diagonal d1 | d2 | ... and zeros elsewhere.  U and V
    are unimodular; pass need_u/need_v=False to skip tracking (returned as
    None) when only D or a kernel is wanted.  Pivot selection is the
    minimal absolute value with deterministic (row, col) tie-breaking.
    """
    w = _SparseWork(mat)
    m, n = mat.nrows, mat.ncols
    ulog = _OpLog(m, rows=True) if need_u else None
    vlog = _OpLog(n, rows=False) if need_v else None

    def rowop(i, k, q):
        w.row_add(i, k, q)
        if ulog:
            ulog.add(i, k, q)

    def colop(j, k, q):
        w.col_add(j, k, q)
        if vlog:
            vlog.add(j, k, q)

    t = 0
    limit = min(m, n)
    while t < limit:
        pivot = None
        best = None
        for (i, j), v in w.ent.items():
            if i < t or j < t:
                continue
            a = abs(v)
            key = (a, i, j)
            if best is None or key < best:
                best = key
                pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        if pi != t:
            w.row_swap(t, pi)
            if ulog:
                ulog.swap(t, pi)
        if pj != t:
            w.col_swap(t, pj)
            if vlog:
                vlog.swap(t, pj)

        while True:
            piv = w.get(t, t)
            # clear column t
            again = False
            for i in sorted(w.cols.get(t, set())):
                if i == t or i < t:
                    continue
                q = -(w.get(i, t) // piv)
                rowop(i, t, q)
                if w.get(i, t):
                    # remainder smaller than pivot: swap it up and restart
                    w.row_swap(t, i)
                    if ulog:
                        ulog.swap(t, i)
                    again = True
                    break
            if again:
                continue
            for j in sorted(w.rows.get(t, set())):
                if j == t or j < t:
                    continue
                q = -(w.get(t, j) // piv)
                colop(j, t, q)
                if w.get(t, j):
                    w.col_swap(t, j)
                    if vlog:
                        vlog.swap(t, j)
                    again = True
                    break
            if again:
                continue
            # row and column clean; enforce divisibility of the rest
            piv = w.get(t, t)
            bad = None
            for (i, j), v in w.ent.items():
                if i > t and j > t and v % piv != 0:
                    if bad is None or (i, j) < bad:
                        bad = (i, j)
            if bad is None:
                break
            rowop(t, bad[0], 1)
        t += 1

    # sign normalisation
    for i in range(limit):
        if w.get(i, i) < 0:
            w.row_neg(i)
            if ulog:
                ulog.neg(i)

    d = IntMat(m, n, dict(w.ent))
    u = ulog.to_intmat() if ulog else None
    v = vlog.to_intmat() if vlog else None
    return (u, d, v)


def snf_diagonal(mat):
    """Just the list of nonzero invariant factors of mat."""
    _, d, _ = smith_normal_form(mat, need_u=False, need_v=False)
    out = []
    for t in range(min(mat.nrows, mat.ncols)):
        v = d.get(t, t)
        if v == 0:
            break
        out.append(v)
    return out


def kernel_basis(mat):
    """Columns spanning ker(mat) as a saturated sublattice of Z^ncols.

    The basis extends to a basis of the ambient lattice, so integral
    membership tests against it are exact.

    Uses unimodular column elimination only (row operations cannot change
    the kernel), selecting pivot rows of minimal active support to limit
    fill-in on sparse inputs.
    """
    n = mat.ncols
    acols = [dict() for _ in range(n)]
    for (i, j), val in mat.entries.items():
        acols[j][i] = val
    vcols = [{j: 1} for j in range(n)]
    row_support = {}
    for j, col in enumerate(acols):
        for i in col:
            row_support.setdefault(i, set()).add(j)
    active = set(range(n))

    def col_add(dst, src, q):
        # column_dst += q * column_src, both matrix and transform sides
        for store, track in ((acols, True), (vcols, False)):
            tgt, s = store[dst], store[src]
            for key, v in s.items():
                nv = tgt.get(key, 0) + q * v
                if nv:
                    if track and key not in tgt:
                        row_support.setdefault(key, set()).add(dst)
                    tgt[key] = nv
                else:
                    tgt.pop(key, None)
                    if track:
                        sup = row_support.get(key)
                        if sup:
                            sup.discard(dst)

    while True:
        # next pivot row: minimal active support, deterministic tie-break
        best = None
        for i, sup in row_support.items():
            k = len(sup)
            if k == 0:
                continue
            if best is None or k < best[0] or (k == best[0] and i < best[1]):
                best = (k, i)
        if best is None:
            break
        r = best[1]
        touching = sorted(row_support[r])
        while len(touching) > 1:
            piv = min(touching, key=lambda j: (abs(acols[j][r]), j))
            pv = acols[piv][r]
            for j in touching:
                if j == piv:
                    continue
                q = -(acols[j][r] // pv)
                if q:
                    col_add(j, piv, q)
                if acols[j].get(r, 0) == 0:
                    row_support[r].discard(j)
            touching = sorted(row_support[r])
        piv = touching[0]
        active.discard(piv)
        for i in acols[piv]:
            sup = row_support.get(i)
            if sup:
                sup.discard(piv)

    cols = []
    for j in sorted(active):
        if acols[j]:
            raise ExactLinError("column elimination left a nonzero column")
        cols.append([vcols[j].get(i, 0) for i in range(n)])
    return IntMat.from_columns(cols, n)


def rank_z(mat):
    return len(snf_diagonal(mat))


def solve_columns(mat, rhs):
    """Solve mat @ X = rhs over Z; raise SolveFailed if impossible."""
    if mat.nrows != rhs.nrows:
        raise ValueError("shape mismatch")
    u, d, v = smith_normal_form(mat)
    ub = u.matmul(rhs)
    limit = min(mat.nrows, mat.ncols)
    diag = [d.get(t, t) for t in range(limit)]
    rank = sum(1 for x in diag if x)
    yent = {}
    for (i, j), val in ub.entries.items():
        if i < rank:
            q, r = divmod(val, diag[i])
            if r:
                raise SolveFailed("no integral solution")
            if q:
                yent[(i, j)] = q
        else:
            raise SolveFailed("no solution: rhs outside column span")
    y = IntMat(mat.ncols, rhs.ncols, {k: v2 for k, v2 in yent.items()
                                      if k[0] < mat.ncols})
    return v.matmul(y)


_RANK_PRIMES = (2147483647, 998244353)


def cohomology_of_pair(d_in, d_out):
    """ker(d_out)/im(d_in) as an :class:`AbGroup`.

    d_in maps C^{n-1} -> C^n and d_out maps C^n -> C^{n+1}; both are
    matrices whose columns are images of basis vectors.  Raises
    :class:`CompositionNonzero` unless d_out @ d_in == 0.

    The torsion subgroup of ker/im equals that of coker(d_in): the
    quotient of the ambient lattice by the (saturated) kernel is free,
    so the sequence 0 -> ker/im -> C/im -> C/ker -> 0 splits.  Hence
    torsion comes straight from the elementary divisors of d_in, and
    only the rank of d_out is needed on top.  That rank is certified
    exactly whenever a modular rank meets the d o d = 0 upper bound
    ncols - rank(d_in); otherwise fall back to an exact kernel.

    >>> d0 = IntMat.zeros(2, 0)
    >>> d1 = IntMat.from_rows([[2, 0], [0, 3]])   # Z^2 --diag(2,3)--> Z^2
    >>> cohomology_of_pair(d1, IntMat.zeros(0, 2))
    AbGroup(rank=0, torsion=(6,))
    """
    if d_in.nrows != d_out.ncols:
        raise ValueError("chain degrees do not line up")
    if not d_out.matmul(d_in).is_zero():
        raise CompositionNonzero("d_out @ d_in != 0")
    n = d_out.ncols
    diag_in = snf_diagonal(d_in)
    rank_in = len(diag_in)
    torsion = [d for d in diag_in if d > 1]

    rank_out = None
    if d_out.is_zero():
        rank_out = 0
    else:
        bound = n - rank_in
        for p in _RANK_PRIMES:
            if fp_rank(d_out.to_numpy_mod(p), p) == bound:
                rank_out = bound
                break
    if rank_out is None:
        rank_out = n - kernel_basis(d_out).ncols
    return AbGroup(n - rank_in - rank_out, torsion)


def lattice_quotient(ambient_dim, sub_gens):
    """Z^ambient_dim / (columns of sub_gens) as an AbGroup."""
    if sub_gens.ncols == 0 or sub_gens.is_zero():
        return AbGroup(ambient_dim)
    diag = snf_diagonal(sub_gens)
    rank = ambient_dim - len(diag)
    return AbGroup(rank, [d for d in diag if d > 1])


# ---------------------------------------------------------------------------
# dense exact mod-p elimination (numpy int64 as an exact container)


def fp_rref(a, p):
    """Row-reduce an int64 array mod p; returns (rref, pivot_cols)."""
    a = np.array(a, dtype=np.int64) % p
    m, n = a.shape
    pivots = []
    r = 0
    for c in range(n):
        if r >= m:
            break
        col = a[r:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), p - 2, p) if p > 2 else int(a[r, c])
        if inv != 1:
            a[r] = (a[r] * inv) % p
        rows = np.nonzero(a[:, c])[0]
        for i in rows:
            if i != r:
                a[i] = (a[i] - a[i, c] * a[r]) % p
        pivots.append(c)
        r += 1
    return a, pivots


def fp_rank(a, p):
    if a is None:
        return 0
    a = np.asarray(a)
    if a.size == 0:
        return 0
    _, piv = fp_rref(a, p)
    return len(piv)


def fp_kernel(a, p):
    """Basis of the right kernel mod p, as a list of int64 vectors."""
    a = np.asarray(a, dtype=np.int64)
    m, n = a.shape
    if n == 0:
        return []
    if m == 0:
        return [np.eye(n, dtype=np.int64)[:, j] for j in range(n)]
    r, piv = fp_rref(a, p)
    pivset = set(piv)
    free = [c for c in range(n) if c not in pivset]
    basis = []
    for f in free:
        v = np.zeros(n, dtype=np.int64)
        v[f] = 1
        for i, c in enumerate(piv):
            v[c] = (-int(r[i, f])) % p
        basis.append(v)
    return basis


def fp_solve(a, b, p):
    """One solution x of a @ x = b mod p, or None."""
    a = np.asarray(a, dtype=np.int64) % p
    b = np.asarray(b, dtype=np.int64) % p
    m, n = a.shape
    aug = np.concatenate([a, b.reshape(m, 1)], axis=1)
    r, piv = fp_rref(aug, p)
    if n in piv:
        return None
    x = np.zeros(n, dtype=np.int64)
    for i, c in enumerate(piv):
        x[c] = r[i, n]
    return x


# ---------------------------------------------------------------------------
# generic small dense elimination over a field object (used where the
# coefficients are Fractions or tiny mod-p problems inside specseq/stacks)


class QQ:
    zero = Fraction(0)
    one = Fraction(1)

    @staticmethod
    def make(v):
        return Fraction(v)

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def div(a, b):
        return a / b

    @staticmethod
    def is_zero(a):
        return a == 0


class GFp:
    def __init__(self, p):
        self.p = p
        self.zero = 0
        self.one = 1 % p

    def make(self, v):
        if isinstance(v, Fraction):
            num = v.numerator % self.p
            den = v.denominator % self.p
            if den == 0:
                raise ZeroDivisionError("denominator divisible by p")
            return (num * pow(den, self.p - 2, self.p)) % self.p
        return int(v) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def div(self, a, b):
        if b % self.p == 0:
            raise ZeroDivisionError
        return (a * pow(b, self.p - 2, self.p)) % self.p

    def is_zero(self, a):
        return a % self.p == 0


def field_rref(rows, ncols, fld):
    """In-place-free rref of a list-of-lists over the field object."""
    a = [list(r) for r in rows]
    m = len(a)
    piv = []
    r = 0
    for c in range(ncols):
        if r >= m:
            break
        sel = None
        for i in range(r, m):
            if not fld.is_zero(a[i][c]):
                sel = i
                break
        if sel is None:
            continue
        a[r], a[sel] = a[sel], a[r]
        inv = fld.div(fld.one, a[r][c])
        a[r] = [fld.mul(inv, x) for x in a[r]]
        for i in range(m):
            if i != r and not fld.is_zero(a[i][c]):
                f = a[i][c]
                a[i] = [fld.sub(x, fld.mul(f, y)) for x, y in zip(a[i], a[r])]
        piv.append(c)
        r += 1
    return a, piv


def field_rank(rows, ncols, fld):
    if not rows or ncols == 0:
        return 0
    return len(field_rref(rows, ncols, fld)[1])


def field_kernel(rows, ncols, fld):
    """Right kernel basis (list of column vectors) of a rows x ncols map."""
    if ncols == 0:
        return []
    if not rows:
        basis = []
        for j in range(ncols):
            v = [fld.zero] * ncols
            v[j] = fld.one
            basis.append(v)
        return basis
    r, piv = field_rref(rows, ncols, fld)
    pivset = set(piv)
    free = [c for c in range(ncols) if c not in pivset]
    basis = []
    for f in free:
        v = [fld.zero] * ncols
        v[f] = fld.one
        for i, c in enumerate(piv):
            v[c] = fld.sub(fld.zero, r[i][f])
        basis.append(v)
    return basis


def field_solve(rows, ncols, rhs, fld):
    """Solve A x = rhs over the field; None if inconsistent."""
    m = len(rows)
    aug = [list(rows[i]) + [rhs[i]] for i in range(m)]
    r, piv = field_rref(aug, ncols + 1, fld)
    if ncols in piv:
        return None
    x = [fld.zero] * ncols
    for i, c in enumerate(piv):
        x[c] = r[i][ncols]
    return x


def field_span_dim(vectors, ncols, fld):
    if not vectors:
        return 0
    return field_rank(vectors, ncols, fld)


def field_in_span(vectors, ncols, target, fld):
    """Is target in the row-span of vectors?"""
    if all(fld.is_zero(t) for t in target):
        return True
    if not vectors:
        return False
    cols = [[vectors[i][j] for i in range(len(vectors))]
            for j in range(ncols)]
    rows = [[cols[j][i] for i in range(len(vectors))] for j in range(ncols)]
    return field_solve(rows, len(vectors), list(target), fld) is not None


# ---------------------------------------------------------------------------
# sparse rank mod p: column elimination with a lazy min-support heap, for
# the strand matrices that are far too large to densify


def fp_rank_sparse(entries, nrows, ncols, p):
    """Rank mod p of a sparse matrix given as {(i, j): value}."""
    import heapq

    cols = {}
    for (i, j), v in entries.items():
        v %= p
        if v:
            cols.setdefault(j, {})[i] = v
    row_sup = {}
    for j, col in cols.items():
        for i in col:
            row_sup.setdefault(i, set()).add(j)
    heap = [(len(js), i) for i, js in row_sup.items()]
    heapq.heapify(heap)
    rank = 0

    def drop_entry(r, c):
        s = row_sup.get(r)
        if s is None:
            return
        s.discard(c)
        if not s:
            del row_sup[r]
        else:
            heapq.heappush(heap, (len(s), r))

    while heap:
        size, i = heapq.heappop(heap)
        js = row_sup.get(i)
        if js is None or len(js) != size:
            continue
        j = min(js, key=lambda c: (len(cols[c]), c))
        rank += 1
        piv = cols.pop(j)
        for r in list(piv):
            drop_entry(r, j)
        inv = pow(piv[i], p - 2, p) if p > 2 else piv[i]
        others = [c for c in list(row_sup.get(i, ())) if c in cols]
        for c in others:
            col = cols[c]
            factor = (col.get(i, 0) * inv) % p
            if not factor:
                continue
            for r, v in piv.items():
                nv = (col.get(r, 0) - factor * v) % p
                if nv:
                    if r not in col:
                        s = row_sup.setdefault(r, set())
                        s.add(c)
                        heapq.heappush(heap, (len(s), r))
                    col[r] = nv
                else:
                    if r in col:
                        del col[r]
                        drop_entry(r, c)
        row_sup.pop(i, None)
    return rank
