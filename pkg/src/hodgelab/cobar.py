"""Weight-strand cohomology of the additive group scheme.

The standard complex of G_a has C^n = Z[x_1..x_n] (normalized: monomials
divisible by every variable) with the inhomogeneous differential

    d(f)(x_1..x_{n+1}) = f(x_2..x_{n+1})
                         + sum_i (-1)^i f(x_1,..,x_i+x_{i+1},..,x_{n+1})
                         + (-1)^{n+1} f(x_1..x_n).

Each variable has weight 2, so the complex splits into finite strands
indexed by (cohomological degree n, weight w).  This module computes the
strand cohomology over Z, Q and F_p, the distinguished classes v_1,
v_{p^i} = [d(x^{p^i})/p] and w_{p^i} = [x^{p^i} mod p], cup products by
concatenation, Bockstein operators, and the torsion census tables.
"""

from __future__ import annotations

from math import comb

from .exactlin import (
    AbGroup, IntMat, cohomology_of_pair, field_rank, fp_rank, fp_solve,
    kernel_basis, smith_normal_form, snf_diagonal, solve_columns, QQ,
    SolveFailed,
)
from .gralg import FP, QQ_R, ZZ
from .utils import parallel_map

__all__ = [
    "NotACocycle", "LiftNotExact", "StrandComplex", "CohClass",
    "strand_basis", "strand_matrix", "standard_complex", "group_cohomology",
    "phi_class", "torsion_class", "cup", "bockstein", "torsion_census",
    "class_is_zero", "classes_equal", "hilbert_dims_f2", "hilbert_dims_odd",
    "kzthree_group", "apply_d",
]


class NotACocycle(Exception):
    pass


class LiftNotExact(Exception):
    """d(integral lift) is not divisible by p: the input was no cocycle."""


def strand_basis(n, w):
    """Lexicographically ordered monomials of C^n of weight w.

    Monomials are exponent tuples (e_1..e_n), all e_i >= 1, sum = w/2.
    """
    if w < 0 or w % 2:
        return []
    m = w // 2
    if n == 0:
        return [()] if m == 0 else []
    if m < n:
        return []

    out = []

    def rec(prefix, left, slots):
        if slots == 1:
            out.append(prefix + (left,))
            return
        for e in range(1, left - slots + 2):
            rec(prefix + (e,), left - e, slots - 1)

    rec((), m, n)
    out.sort()
    return out


def _differential_terms(exps):
    """Signed expansion of d on one monomial; keys are (n+1)-tuples."""
    n = len(exps)
    terms = {}

    def add(key, c):
        nc = terms.get(key, 0) + c
        if nc:
            terms[key] = nc
        else:
            terms.pop(key, None)

    add((0,) + exps, 1)
    for i in range(1, n + 1):
        sign = -1 if i % 2 else 1
        e = exps[i - 1]
        head, tail = exps[: i - 1], exps[i:]
        for c in range(e + 1):
            add(head + (c, e - c) + tail, sign * comb(e, c))
    add(exps + (0,), -1 if (n + 1) % 2 else 1)
    return terms


def strand_matrix(n, w):
    """The differential C^n_w -> C^{n+1}_w as an integer matrix."""
    src = strand_basis(n, w)
    tgt = strand_basis(n + 1, w)
    index = {m: i for i, m in enumerate(tgt)}
    entries = {}
    for j, exps in enumerate(src):
        for key, c in _differential_terms(exps).items():
            if min(key) == 0:
                # degenerate monomials must cancel in the normalized complex
                raise AssertionError("normalization broken at %r" % (key,))
            entries[(index[key], j)] = c
    return IntMat(len(tgt), len(src), entries)


def apply_d(n, w, cochain):
    """Apply the differential to a cochain given as {monomial: coeff}."""
    out = {}
    for exps, c in cochain.items():
        if c == 0:
            continue
        for key, dc in _differential_terms(exps).items():
            if min(key) == 0:
                continue  # cancels across the cochain; dropped termwise
            nc = out.get(key, 0) + c * dc
            if nc:
                out[key] = nc
            else:
                out.pop(key, None)
    return out


class StrandComplex:
    """Table of strand bases and differentials for n <= n_max, w <= w_max.

    dods = 0 is asserted for every stored consecutive pair at build time,
    not left to the test suite.
    """

    def __init__(self, ring, n_max, w_max, strands):
        self.ring = ring
        self.n_max = n_max
        self.w_max = w_max
        self.strands = strands  # (n, w) -> (basis, IntMat)

    def basis(self, n, w):
        return self.strands[(n, w)][0]

    def differential(self, n, w):
        return self.strands[(n, w)][1]


def standard_complex(n_max, w_max, ring=ZZ, threads=None):
    if n_max < 0 or w_max < 0 or w_max % 2:
        raise ValueError("need n_max >= 0 and even w_max >= 0")
    jobs = [(n, w) for w in range(0, w_max + 1, 2) for n in range(n_max + 1)]

    def build(job):
        n, w = job
        return job, (strand_basis(n, w), strand_matrix(n, w))

    strands = dict(parallel_map(build, jobs, threads))
    for w in range(0, w_max + 1, 2):
        for n in range(n_max):
            d0 = strands[(n, w)][1]
            d1 = strands[(n + 1, w)][1]
            if not d1.matmul(d0).is_zero():
                raise AssertionError("d o d != 0 at (n=%d, w=%d)" % (n, w))
    return StrandComplex(ring, n_max, w_max, strands)


def group_cohomology(n, w, ring=ZZ):
    """H^n(G_a)_w: an AbGroup over Z, a dimension over Q or F_p."""
    d_in = strand_matrix(n - 1, w) if n >= 1 else IntMat.zeros(
        len(strand_basis(0, w)), 0)
    d_out = strand_matrix(n, w)
    if ring is ZZ:
        return cohomology_of_pair(d_in, d_out)
    if ring is QQ_R:
        dim_ker = d_out.ncols - field_rank(d_out.to_rows(), d_out.ncols, QQ)
        return dim_ker - field_rank(d_in.to_rows(), d_in.ncols, QQ)
    p = ring.p
    dim_ker = d_out.ncols - fp_rank(d_out.to_numpy_mod(p), p)
    return dim_ker - fp_rank(d_in.to_numpy_mod(p), p)


class CohClass:
    """A cocycle representative in one strand.

    cocycle maps strand-basis monomials to coefficients (ints; classes
    over F_p keep representatives in 0..p-1).
    """

    __slots__ = ("cohdeg", "weight", "cocycle", "ring")

    def __init__(self, cohdeg, weight, cocycle, ring=ZZ, check=True):
        self.cohdeg = cohdeg
        self.weight = weight
        self.cocycle = {k: v for k, v in cocycle.items() if v}
        self.ring = ring
        if check and not self._is_cocycle():
            raise NotACocycle("d(cochain) != 0 in strand (%d, %d)"
                              % (cohdeg, weight))

    def _is_cocycle(self):
        img = apply_d(self.cohdeg, self.weight, self.cocycle)
        if self.ring is ZZ or self.ring is QQ_R:
            return not img
        p = self.ring.p
        return all(v % p == 0 for v in img.values())

    def vector(self):
        basis = strand_basis(self.cohdeg, self.weight)
        return [self.cocycle.get(m, 0) for m in basis]

    def scale(self, c):
        return CohClass(self.cohdeg, self.weight,
                        {k: self.ring.normalize(v * c)
                         for k, v in self.cocycle.items()},
                        self.ring, check=False)

    def __repr__(self):
        return "CohClass(n=%d, w=%d, %r over %s)" % (
            self.cohdeg, self.weight, self.cocycle, self.ring)


def phi_class(n):
    """The coboundary d_1(x^n) as a cochain dict in C^2 of weight 2n."""
    if n < 1:
        raise ValueError("n >= 1")
    return apply_d(1, 2 * n, {(n,): 1})


def torsion_class(p, i):
    """v_{p^i} = [d(x^{p^i})/p], a nonzero p-torsion class in H^2."""
    q = p ** i
    phi = phi_class(q)
    cocycle = {}
    for k, c in phi.items():
        if c % p:
            raise LiftNotExact("d(x^%d) not divisible by %d" % (q, p))
        cocycle[k] = c // p
    return CohClass(2, 2 * q, cocycle, ZZ)


def v_one():
    return CohClass(1, 2, {(1,): 1}, ZZ)


def w_class(p, i):
    """w_{p^i} = [x^{p^i}] over F_p, a degree-1 mod-p cocycle."""
    return CohClass(1, 2 * p ** i, {(p ** i,): 1}, FP(p))


def cup(a, b):
    """Concatenation product of cocycles; lands in the sum bidegree."""
    if a.ring is not b.ring:
        raise ValueError("cup needs matching coefficient rings")
    ring = a.ring
    out = {}
    for e1, c1 in a.cocycle.items():
        for e2, c2 in b.cocycle.items():
            key = e1 + e2
            out[key] = ring.normalize(out.get(key, 0) + c1 * c2)
    cl = CohClass(a.cohdeg + b.cohdeg, a.weight + b.weight, out, ring,
                  check=False)
    if not cl._is_cocycle():
        raise NotACocycle("cup of non-cocycles")
    return cl


def bockstein(p, a):
    """Bockstein of an F_p class: lift to Z, apply d, divide by p, reduce."""
    if a.ring.p != p or a.ring.modulus != p:
        raise ValueError("bockstein expects an F_%d class" % p)
    lift = {k: int(v) % p for k, v in a.cocycle.items()}
    img = apply_d(a.cohdeg, a.weight, lift)
    out = {}
    for k, c in img.items():
        if c % p:
            raise LiftNotExact("input was not an F_%d cocycle" % p)
        if (c // p) % p:
            out[k] = (c // p) % p
    return CohClass(a.cohdeg + 1, a.weight, out, FP(p))


def class_is_zero(cl):
    """Is the class a coboundary (exactly over Z, mod p over F_p)?"""
    d_in = strand_matrix(cl.cohdeg - 1, cl.weight)
    vec = cl.vector()
    if cl.ring is ZZ:
        if all(v == 0 for v in vec):
            return True
        target = IntMat.from_columns([vec], d_in.nrows)
        try:
            solve_columns(d_in, target)
            return True
        except SolveFailed:
            return False
    p = cl.ring.p
    import numpy as np
    b = np.array(vec, dtype=np.int64).reshape(-1, 1) % p
    return fp_solve(d_in.to_numpy_mod(p), b, p) is not None


def classes_equal(a, b):
    if (a.cohdeg, a.weight, a.ring) != (b.cohdeg, b.weight, b.ring):
        return False
    diff = dict(a.cocycle)
    for k, v in b.cocycle.items():
        diff[k] = diff.get(k, 0) - v
    return class_is_zero(CohClass(a.cohdeg, a.weight, diff, a.ring,
                                  check=False))


def is_scalar_multiple(a, b, p):
    """Does [a] = c[b] hold for some nonzero c in F_p?"""
    for c in range(1, p):
        if classes_equal(a, b.scale(c)):
            return c
    return None


def torsion_census(p, n, w_max):
    """[(w, H^n(G_a, Z)_w)] for even w <= w_max, with Z/p counts downstream.

    The number of Z/p summands in a strand group g is g.torsion_count(p).
    """
    jobs = list(range(0, w_max + 1, 2))
    groups = parallel_map(lambda w: group_cohomology(n, w, ZZ), jobs)
    return list(zip(jobs, groups))


def phi_span_divisors(n):
    """Elementary divisors of the two differential-convention spans.

    Returns (ours, alternate) where ours is the span of d_1(x^n) and the
    alternate is the span of (y-z)^n - y^n + z^n, both inside the full
    weight-2n bidegree-(2) monomial lattice.  The two conventions differ
    by an antipode twist; their coboundary lattices must agree up to
    elementary divisors.
    """
    ours = phi_class(n)
    alt = {}
    for j in range(0, n + 1):
        c = comb(n, j) * ((-1) ** (n - j))
        if j == n:
            c -= 1
        if j == 0:
            c += 1
        if c:
            alt[(j, n - j)] = c
    full = [(j, n - j) for j in range(0, n + 1)]

    def divisors(vec_dict):
        col = [[vec_dict.get(m, 0)] for m in full]
        mat = IntMat.from_rows(col)
        return snf_diagonal(mat)

    return divisors(ours), divisors(alt)


# -- dimension oracles -------------------------------------------------------


def hilbert_dims_f2(n_max, w_max):
    """dim table of F_2[w_1, w_2, w_4, ...], generator w_{2^i} in (1, 2^{i+1}).

    Returns {(n, w): dim} for n <= n_max, w <= w_max.
    """
    gens = []
    q = 1
    while 2 * q <= w_max:
        gens.append((1, 2 * q))
        q *= 2
    return _poly_algebra_dims(gens, [], n_max, w_max)


def hilbert_dims_odd(p, n_max, w_max):
    """dim table of Lambda(w_{p^i}: i>=0) tensor Sym(v_{p^i}: i>=1).

    w_{p^i} sits in bidegree (1, 2p^i); v_{p^i} in (2, 2p^i).  Every
    generator whose weight fits the window is included (for p = 3,
    w <= 24 that means v_9 as well as v_3).
    """
    ext, sym = [], []
    q = 1
    while 2 * q <= w_max:
        ext.append((1, 2 * q))
        if q > 1:
            sym.append((2, 2 * q))
        q *= p
    return _poly_algebra_dims(sym, ext, n_max, w_max)


def _poly_algebra_dims(sym_gens, ext_gens, n_max, w_max):
    # unbounded-knapsack pass per symmetric generator, one-shot per
    # exterior generator
    table = {(0, 0): 1}
    for dn, dw in sym_gens:
        for n in range(n_max + 1):
            for w in range(w_max + 1):
                c = table.get((n, w))
                if c and n + dn <= n_max and w + dw <= w_max:
                    key = (n + dn, w + dw)
                    table[key] = table.get(key, 0) + c
    for dn, dw in ext_gens:
        new = dict(table)
        for (n, w), c in table.items():
            if n + dn <= n_max and w + dw <= w_max:
                key = (n + dn, w + dw)
                new[key] = new.get(key, 0) + c
        table = new
    return {k: v for k, v in table.items() if v}


def kzthree_group(m):
    """The regraded sum of strand groups with n = cohdeg + weight.

    Matches the low-degree singular cohomology of the third integral
    Eilenberg-MacLane space under the doubling convention used here.
    """
    rank = 0
    torsion = []
    for i in range(0, m + 1):
        w = m - i
        if w < 0 or w % 2:
            continue
        if i == 0:
            g = AbGroup(1, ()) if w == 0 else AbGroup(0, ())
        else:
            g = group_cohomology(i, w, ZZ)
        rank += g.rank
        torsion.extend(g.torsion)
    return AbGroup(rank, tuple(torsion))
