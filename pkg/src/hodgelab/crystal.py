"""Weight-truncated crystalline-period models for quasiregular semiperfect
rings of the shape F_p[x_1^{1/p^inf},...]/(regular monomial relators).

The mod-p and mod-p^2 period rings are divided-power envelopes over the
truncated perfection; everything is strand-by-strand linear algebra on
explicit PD monomial bases.  The module computes the Hodge, conjugate
and Nygaard filtrations, the graded Cartier map kappa, the splitting of
the conjugate filtration induced by a flat lift, and the cosimplicial
unfolding that recovers de Rham cohomology of F_p[x].
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial, gcd

import numpy as np

from .derham import DgaForms, TruncationTooSmall, de_rham_cohomology
from .exactlin import (IntMat, fp_rank, fp_rank_sparse, fp_rref,
                       smith_normal_form)
from .gralg import FP, PDContext, TruncationOverflow, ZP2

__all__ = [
    "NotALift", "TruncationOverflow", "TruncationTooSmall",
    "SemiperfectModel", "LiftModel", "CrysAlgebra", "acrys_mod",
    "hodge_fil", "conj_fil", "gr_conj_basis", "nygaard", "kappa",
    "kappa_scalar", "verify_kappa_iso", "di_splitting", "unfold_derham",
]


class NotALift(Exception):
    pass


class SemiperfectModel:
    """S = F_p[x_1^{1/p^m},..,x_d^{1/p^m}] / (relators), weight-truncated.

    Relators are ('var', i) for x_i = 0 or ('diff', i, j) for x_i = x_j,
    with strictly increasing leading indices (a regular sequence).  The
    model keeps exponents with denominator up to p^depth and total
    weight up to w_max.
    """

    def __init__(self, p, nvars, relators, depth, w_max, names=None):
        if p < 2 or any(p % q == 0 for q in range(2, p)):
            raise ValueError("characteristic must be prime")
        if depth < 1:
            raise ValueError("semiperfect models need depth >= 1")
        if w_max < p:
            raise ValueError("weight bound below p sees nothing")
        self.p = p
        self.nvars = nvars
        self.relators = [tuple(r) for r in relators]
        self.depth = depth
        self.w_max = w_max
        self.names = names
        # constructing the PD context validates the relator shapes
        self._probe = PDContext(FP(p), nvars, self.relators, depth=depth,
                                max_weight=w_max, names=names)

    def tautological_lift(self):
        return LiftModel(self.p, self.nvars, self.relators, self.depth,
                         self.w_max)

    def frobenius_covers_depth(self, shallow):
        """Every monomial of denominator p^shallow is a p-th power in the
        model; structural sanity for the semiperfectness assumption."""
        return shallow + 1 <= self.depth


class LiftModel:
    """The tautological flat lift (Z/p^2)[x^(1/p^m)]/(relators)."""

    def __init__(self, p, nvars, relators, depth, w_max):
        self.p = p
        self.nvars = nvars
        self.relators = [tuple(r) for r in relators]
        self.depth = depth
        self.w_max = w_max


class CrysAlgebra:
    """A truncated crystalline period ring A/p or A/p^2 of a model S.

    The underlying module is the PD envelope basis x^e * prod s_j^[k_j]
    (leading exponents in [0,1)); theta kills the positive divided
    powers, and the Frobenius acts by x^e -> x^(pe) together with the
    exact integral scalars on divided powers.
    """

    def __init__(self, S, modulus):
        self.S = S
        self.p = S.p
        if modulus == S.p:
            ring = FP(S.p)
        elif modulus == S.p ** 2:
            ring = ZP2(S.p)
        else:
            raise ValueError("modulus must be p or p^2")
        self.modulus = modulus
        self.ctx = PDContext(ring, S.nvars, S.relators, depth=S.depth,
                             max_weight=S.w_max, names=S.names)
        self._phi_gen_cache = {}
        self._basis_cache = {}

    # -- bases ---------------------------------------------------------------

    def strand_basis(self, w):
        w = Fraction(w)
        got = self._basis_cache.get(w)
        if got is None:
            got = self.ctx.strand_basis(w)
            self._basis_cache[w] = got
        return got

    def s_basis(self, w):
        """Strand basis of the image of S (divided-power-free keys)."""
        return [k for k in self.strand_basis(w) if not any(k[1])]

    # -- structure maps -------------------------------------------------------

    def theta(self, el):
        """Projection to S (and to the lift when the modulus is p^2)."""
        out = self.ctx.zero()
        for (exps, pd), c in el.terms.items():
            if not any(pd):
                out = out + self.ctx.monomial(exps, pd, c)
        return out

    def frobenius(self, el):
        """The crystalline Frobenius: Teichmueller p-th power on the
        perfection, exact integral scalars on divided powers."""
        out = self.ctx.zero()
        zero_pd = (0,) * len(self.ctx.relators)
        for (exps, pd), c in el.terms.items():
            term = self.ctx.monomial(tuple(e * self.p for e in exps),
                                     zero_pd, c)
            for j, k in enumerate(pd):
                if k:
                    term = term * self._phi_pd_gen(j, k)
            out = out + term
        return out

    def _phi_pd_gen(self, j, k):
        """phi(s_j^[k]) as an element, cached."""
        key = (j, k)
        got = self._phi_gen_cache.get(key)
        if got is not None:
            return got
        p = self.p
        rel = self.ctx.relators[j]
        if rel[0] == "var":
            # phi(gamma_k(x)) = gamma_k(x^p) = ((pk)!/k!) gamma_pk(x)
            pd = [0] * len(self.ctx.relators)
            pd[j] = p * k
            el = self.ctx.monomial((0,) * self.ctx.nvars, tuple(pd),
                                   factorial(p * k) // factorial(k))
        else:
            el = self._gamma_of_phi_s(j, k)
        self._phi_gen_cache[key] = el
        return el

    def _gamma_of_phi_s(self, j, k):
        """gamma_k(x_i^p - x_t^p) for the relator s_j = x_i - x_t."""
        p = self.p
        _, i, t = self.ctx.relators[j]
        # phi(s) = sum_{c=1}^{p} binom(p,c) c! x_t^(p-c) gamma_c(s)
        parts = [(comb(p, c) * factorial(c), p - c, c) for c in range(1, p + 1)]
        out = self.ctx.zero()
        for split in _compositions(k, len(parts)):
            term = self.ctx.one()
            coeff = 1
            for (scal, texp, c), a in zip(parts, split):
                if a == 0:
                    continue
                # gamma_a(scal * x_t^texp * gamma_c(s)) =
                #   scal^a x_t^(a*texp) ((ac)!/(a!(c!)^a)) gamma_(ac)(s)
                coeff *= scal ** a
                coeff *= factorial(a * c) // (factorial(a)
                                              * factorial(c) ** a)
                exps = [0] * self.ctx.nvars
                exps[t] = a * texp
                pd = [0] * len(self.ctx.relators)
                pd[j] = a * c
                term = term * self.ctx.monomial(tuple(exps), tuple(pd), 1)
            out = out + term.scale(coeff)
        return out

    def theta_matrix(self, w):
        """Matrix of theta on the weight-w strand, in basis coordinates."""
        keys = self.strand_basis(w)
        tkeys = self.s_basis(w)
        index = {k: i for i, k in enumerate(tkeys)}
        entries = {}
        for c, key in enumerate(keys):
            if not any(key[1]):
                entries[(index[key], c)] = 1
        return entries, len(tkeys), len(keys)

    def phi_matrix(self, w):
        """Integer matrix of phi from strand w to strand p*w."""
        src = self.strand_basis(w)
        tgt = self.strand_basis(self.p * Fraction(w))
        index = {k: i for i, k in enumerate(tgt)}
        mat = IntMat.zeros(len(tgt), len(src))
        for c, key in enumerate(src):
            img = self.frobenius(self.ctx.monomial(key[0], key[1], 1))
            for k2, v in img.terms.items():
                mat.entries[(index[k2], c)] = int(v)
        return mat, src, tgt


def _compositions(total, nparts):
    if nparts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, nparts - 1):
            yield (first,) + rest


def acrys_mod(S, modulus):
    """The truncated period ring of S at the given modulus (p or p^2)."""
    return CrysAlgebra(S, modulus)


# -- filtrations ---------------------------------------------------------------


def hodge_fil(A, r, w):
    """Keys spanning the r-th divided-power ideal in weight w."""
    if r < 0:
        raise ValueError("filtration index must be >= 0")
    return [k for k in A.strand_basis(w) if sum(k[1]) >= r]


def conj_fil(A, r, w):
    """Keys spanning the rising conjugate stage r in weight w: total
    divided-power exponent below (r+1)p."""
    if r < 0:
        raise ValueError("filtration index must be >= 0")
    return [k for k in A.strand_basis(w) if sum(k[1]) < (r + 1) * A.p]


def gr_conj_basis(A, r, w):
    p = A.p
    return [k for k in A.strand_basis(w) if r * p <= sum(k[1]) < (r + 1) * p]


def nygaard(A, i, w):
    """Mod-p image of the Nygaard stage N^(>=i) on the weight-w strand.

    Membership is decided on the mod-p^2 model: a lattice vector v lies
    in the stage when phi(v) is divisible by p^i there.  Returns F_p
    row vectors over the strand basis.
    """
    if A.modulus != A.p ** 2:
        raise ValueError("Nygaard detection needs the mod-p^2 model")
    if i > 2:
        raise ValueError("the mod-p^2 model resolves divisibility to p^2")
    if i == 0:
        n = len(A.strand_basis(w))
        return [[1 if t == c else 0 for t in range(n)] for c in range(n)]
    mat, _src, _tgt = A.phi_matrix(w)
    return _kernel_mod_image(mat, A.p ** i, A.p)


def _kernel_mod_image(mat, q, p):
    """F_p basis of the mod-p image of {v : mat v == 0 mod q}."""
    n = mat.ncols
    _, d, v = smith_normal_form(mat, need_u=False, need_v=True)
    diag = [d.entries.get((t, t), 0) for t in range(min(d.nrows, d.ncols))]
    gens = []
    for t in range(n):
        col = v.column(t)
        dt = diag[t] if t < len(diag) else 0
        scale = 1 if dt == 0 else q // gcd(dt, q)
        vec = [0] * n
        for i, val in col.items():
            vec[i] = (val * scale) % p
        if any(vec):
            gens.append(vec)
    if not gens:
        return []
    arr = np.array(gens, dtype=np.int64).T % p
    _, piv = fp_rref(arr, p)
    return [gens[j] for j in piv]


def depth_restrict(keys, p, depth):
    """Keys whose variable exponents have denominator at most p^depth.

    Frobenius-built maps out of a depth-m model land in this sub-basis
    with depth m-1; bijectivity statements at finite truncation compare
    against it rather than the full strand.
    """
    q = p ** max(depth, 0)
    out = []
    for exps, pd in keys:
        if all(q % Fraction(e).denominator == 0 for e in exps):
            out.append((exps, pd))
    return out


# -- kappa ---------------------------------------------------------------------


def kappa_scalar(p, k):
    """(pk)!/(p^k k!), the p-adic unit in the graded Cartier formula."""
    return factorial(p * k) // (p ** k * factorial(k))


def kappa(A, r, elt):
    """The graded Cartier map on Gamma^r(I/I^2), Frobenius-twisted.

    elt: {(exps, comps): coeff} where exps indexes a divided-power-free
    basis monomial of S and comps are the divided exponents (k_1..k_m)
    with sum r.  Returns the representative
    phi(x^e) * prod ((pk_j)!/(p^kj kj!)) s_j^[p k_j] in Fil_r.
    """
    p = A.p
    m = len(A.ctx.relators)
    out = A.ctx.zero()
    for (exps, comps), coeff in elt.items():
        comps = tuple(comps) + (0,) * (m - len(comps))
        if sum(comps) != r:
            raise ValueError("divided exponents must sum to the grade")
        scal = 1
        for k in comps:
            scal *= kappa_scalar(p, k)
        pd = tuple(p * k for k in comps)
        pexps = tuple(Fraction(e) * p for e in exps)
        term = A.ctx.monomial(pexps, pd, coeff)
        out = out + term.scale(scal)
    return out


def _vector_on(el, keys):
    index = {k: i for i, k in enumerate(keys)}
    vec = [0] * len(keys)
    for key, c in el.terms.items():
        if key in index:
            vec[index[key]] = int(c)
        else:
            raise AssertionError("element leaves the expected span")
    return vec


def _twist_sources(A, r, v):
    """Basis of Gamma^r(I/I^2) twisted, at source weight v: pairs of an
    S-monomial exponent tuple and a divided multi-exponent of total r."""
    m = len(A.ctx.relators)
    if m == 0:
        return [(k[0], ()) for k in A.s_basis(v - r)] if r == 0 else []
    out = []
    for skey in A.s_basis(v - r):
        for comp in _compositions(r, m):
            out.append((skey[0], comp))
    return out


def verify_kappa_iso(S, r_max, w_max=None):
    """Strandwise bijectivity of kappa_r onto gr_r^conj, r <= r_max.

    Two routes per (r, target weight): the source count must equal an
    independently enumerated gr-strand dimension, and the kappa matrix
    must be invertible mod p.  The graded side is taken at the exponent
    granularity the depth-m Frobenius can reach (denominators up to
    p^(m-1)); target weights run in steps of that granularity.
    """
    p = S.p
    A = acrys_mod(S, p)
    if w_max is None:
        w_max = S.w_max
    entries = []
    step = Fraction(1, p ** (S.depth - 1))
    for r in range(0, r_max + 1):
        w = Fraction(r * p)
        while w <= w_max:
            srcs = _twist_sources(A, r, w / p)
            gr_keys = depth_restrict(gr_conj_basis(A, r, w), p, S.depth - 1)
            ok = len(srcs) == len(gr_keys)
            if srcs and ok:
                cols = []
                for exps, comp in srcs:
                    img = kappa(A, r, {(exps, comp): 1})
                    cols.append(_vector_on(img, gr_keys))
                arr = np.array(cols, dtype=np.int64).T % p
                ok = fp_rank(arr, p) == len(srcs)
            entries.append({"r": r, "w": str(w), "source_dim": len(srcs),
                            "gr_dim": len(gr_keys), "ok": bool(ok)})
            w += step
    return entries


# -- the lift-induced splitting --------------------------------------------------


def di_splitting(S, lift, r_max=None):
    """Splitting of the conjugate filtration from a flat lift.

    Builds f on Gamma^(<=r_max)(I/I^2) (default r_max = p-1): the S
    factor goes through phi, a divided generator through the divided
    Frobenius phi_1 of its Teichmueller lift in K = ker theta_2, and
    higher grades multiplicatively.  Returns (f, entries) where f maps
    {(exps, comps): coeff} dictionaries to mod-p elements, and entries
    certify injectivity, complementarity to the lower conjugate stage,
    agreement with kappa on the graded pieces, and the p-intertwining
    of phi_0 and phi_1.
    """
    p = S.p
    if r_max is None:
        r_max = p - 1
    if r_max > p - 1:
        raise TruncationOverflow("the splitting extends only to grade p-1")
    if not isinstance(lift, LiftModel) or lift.p != S.p \
            or lift.nvars != S.nvars \
            or [tuple(r) for r in lift.relators] != S.relators \
            or lift.depth != S.depth:
        raise NotALift("lift does not reduce to S")
    A2 = acrys_mod(S, p * p)
    A1 = acrys_mod(S, p)
    m = len(S.relators)

    # theta_2 surjects onto the lift: the divided-power-free keys map
    # identically, so a strand spot-check suffices
    for w in (1, 2):
        ent, nrows, _ = A2.theta_matrix(w)
        hit = {i for (i, _c) in ent}
        if hit != set(range(nrows)):
            raise NotALift("theta_2 misses part of the lift")

    phi1_gen = []
    for j in range(m):
        img = A2._phi_pd_gen(j, 1)
        el1 = A1.ctx.zero()
        for key, c in img.terms.items():
            c = int(c)
            if c % p:
                raise AssertionError("phi(K) escaped p A/p^2")
            el1 = el1 + A1.ctx.monomial(key[0], key[1], (c // p) % p)
        phi1_gen.append(el1)

    def f(elt):
        out = A1.ctx.zero()
        for (exps, comps), coeff in elt.items():
            term = A1.ctx.monomial(tuple(Fraction(e) * p for e in exps),
                                   (0,) * m, coeff)
            for j, k in enumerate(comps):
                if k:
                    term = term * phi1_gen[j].divided_power(k)
            out = out + term
        return out

    entries = []
    step = Fraction(1, p ** (S.depth - 1))
    for r in range(0, r_max + 1):
        w = Fraction(r * p)
        while w <= S.w_max:
            srcs = _twist_sources(A1, r, w / p)
            fil_r = depth_restrict(conj_fil(A1, r, w), p, S.depth - 1)
            lower = depth_restrict(conj_fil(A1, r - 1, w), p,
                                   S.depth - 1) if r else []
            gr_keys = depth_restrict(gr_conj_basis(A1, r, w), p, S.depth - 1)
            index = {k: i for i, k in enumerate(fil_r)}
            gidx = {k: i for i, k in enumerate(gr_keys)}
            ok = True
            cols = []
            try:
                for exps, comp in srcs:
                    cols.append(_vector_on(f({(exps, comp): 1}), fil_r))
            except AssertionError:
                # the image left the expected conjugate stage
                entries.append({"r": r, "w": str(w),
                                "source_dim": len(srcs),
                                "fil_dim": len(fil_r), "ok": False})
                w += step
                continue
            low = []
            for k in lower:
                vec = [0] * len(fil_r)
                vec[index[k]] = 1
                low.append(vec)
            if cols + low:
                arr = np.array(cols + low, dtype=np.int64).T % p
                rank = fp_rank(arr, p)
            else:
                rank = 0
            # injective, misses the lower stage, and together they fill it
            ok = rank == len(srcs) + len(low) and rank == len(fil_r)
            for (exps, comp), col in zip(srcs, cols):
                gvec = _vector_on(kappa(A1, r, {(exps, comp): 1}), gr_keys)
                fvec = [0] * len(gr_keys)
                for key, i in index.items():
                    if key in gidx:
                        fvec[gidx[key]] = col[i] % p
                if [x % p for x in gvec] != fvec:
                    ok = False
            entries.append({"r": r, "w": str(w), "source_dim": len(srcs),
                            "fil_dim": len(fil_r), "ok": bool(ok)})
            w += step
    # p-intertwining: phi_1(p u) = phi_0(u) for u in the lift of S
    inter_ok = True
    for w in range(1, min(4, int(S.w_max // p)) + 1):
        for key in A2.s_basis(w):
            img = A2.frobenius(A2.ctx.monomial(key[0], key[1], p))
            half = A1.ctx.zero()
            for k2, c in img.terms.items():
                c = int(c)
                if c % p:
                    inter_ok = False
                half = half + A1.ctx.monomial(k2[0], k2[1], (c // p) % p)
            direct = A1.frobenius(A1.ctx.monomial(key[0], key[1], 1))
            if not (half - direct).is_zero():
                inter_ok = False
    entries.append({"r": "phi-intertwine", "w": "-", "source_dim": 0,
                    "fil_dim": 0, "ok": bool(inter_ok)})
    return f, entries


# -- the unfolding ---------------------------------------------------------------


def _unfold_contexts(p, depth, w_cap):
    lvl0 = PDContext(FP(p), 1, [], depth=depth, max_weight=w_cap)
    lvl1 = PDContext(FP(p), 2, [("diff", 0, 1)], depth=depth,
                     max_weight=w_cap)
    lvl2 = PDContext(FP(p), 3, [("diff", 0, 1), ("diff", 1, 2)], depth=depth,
                     max_weight=w_cap)
    return lvl0, lvl1, lvl2


def _coface01(lvl1, el, which):
    out = lvl1.zero()
    for (exps, _pd), c in el.terms.items():
        tgt = [0, 0]
        tgt[which] = exps[0]
        out = out + lvl1.monomial(tuple(tgt), (0,), c)
    return out


def _coface12(lvl2, el, which):
    keep = {0: (0, 1), 1: (0, 2), 2: (1, 2)}[which]
    out = lvl2.zero()
    for (exps, pd), c in el.terms.items():
        tgt = [0, 0, 0]
        tgt[keep[0]] = exps[0]
        tgt[keep[1]] = exps[1]
        term = lvl2.monomial(tuple(tgt), (0, 0), c)
        k = pd[0]
        if k:
            term = term * _s_image(lvl2, keep, k)
        out = out + term
    return out


def _s_image(lvl2, keep, k):
    if keep == (0, 1):
        return lvl2.pd_gen(0, k)
    if keep == (1, 2):
        return lvl2.pd_gen(1, k)
    out = lvl2.zero()
    for a in range(k + 1):
        out = out + lvl2.monomial((0, 0, 0), (a, k - a), 1)
    return out


def _unfold_strand_dims(p, depth, w_cap, w):
    """(dim H^0, dim H^1) of the 3-level unfolding at strand w."""
    lvl0, lvl1, lvl2 = _unfold_contexts(p, depth, w_cap)
    b0 = lvl0.strand_basis(w)
    b1 = lvl1.strand_basis(w)
    b2 = lvl2.strand_basis(w)
    i1 = {k: i for i, k in enumerate(b1)}
    i2 = {k: i for i, k in enumerate(b2)}
    d0 = {}
    for c, key in enumerate(b0):
        el = lvl0.monomial(key[0], key[1], 1)
        img = _coface01(lvl1, el, 0) - _coface01(lvl1, el, 1)
        for k2, v in img.terms.items():
            d0[(i1[k2], c)] = int(v)
    d1 = {}
    for c, key in enumerate(b1):
        el = lvl1.monomial(key[0], key[1], 1)
        img = (_coface12(lvl2, el, 0) - _coface12(lvl2, el, 1)
               + _coface12(lvl2, el, 2))
        for k2, v in img.terms.items():
            d1[(i2[k2], c)] = int(v)
    r0 = fp_rank_sparse(d0, len(b1), len(b0), p)
    r1 = fp_rank_sparse(d1, len(b2), len(b1), p)
    h0 = len(b0) - r0
    h1 = (len(b1) - r1) - r0
    return h0, h1


def unfold_derham(p, w_max, N=2, depth=None):
    """Compare the truncated cosimplicial period complex of F_p[x] with
    de Rham cohomology, strand by strand up to w_max.

    N is the top cosimplicial index kept (only the contract's N=2 is
    supported: levels tensor^1..3).  Each strand is computed at the
    configured depth and at depth-1; disagreement raises
    TruncationTooSmall rather than reporting either answer.
    """
    if N != 2:
        raise ValueError("only the two-coface truncation is supported")
    if depth is None:
        depth = 3 if p == 2 else 2
    if depth < 2:
        raise TruncationTooSmall("need depth >= 2 for the stability check")
    if w_max < p:
        raise TruncationTooSmall("w_max below p sees no torsion strand")
    base = DgaForms(FP(p), [("x", 1)])
    entries = []
    for w in range(0, w_max + 1):
        got = _unfold_strand_dims(p, depth, w_max, w)
        shallow = _unfold_strand_dims(p, depth - 1, w_max, w)
        if got != shallow:
            raise TruncationTooSmall(
                "strand %s has not stabilized at depth %d" % (w, depth))
        want = (de_rham_cohomology(base, 0, w),
                de_rham_cohomology(base, 1, w))
        entries.append({"w": w, "h0": got[0], "h1": got[1],
                        "dr0": want[0], "dr1": want[1],
                        "ok": bool(got == want)})
    # a few fractional strands must vanish on both sides
    for num in (1, p + 1):
        w = Fraction(num, p)
        if w > w_max:
            continue
        got = _unfold_strand_dims(p, depth, w_max, w)
        entries.append({"w": str(w), "h0": got[0], "h1": got[1],
                        "dr0": 0, "dr1": 0, "ok": bool(got == (0, 0))})
    return entries
