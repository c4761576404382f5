"""Graded commutative algebra substrate.

Provides the exact coefficient rings (Z, Q, F_p, Z/p^2), sparse
multivariate polynomials whose exponents may be integers or fractions
with p-power denominators, divided-power (PD) polynomial algebras in
normal form, and length-2 Witt vector arithmetic.

Weight conventions: every generator carries a weight; the weight of a
monomial is the exponent-weighted sum.  A context may carry a weight cap
and a root depth; arithmetic that would leave the modelled window raises
:class:`WeightOverflow` / :class:`TruncationOverflow` instead of
silently truncating.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

__all__ = [
    "RingMismatch", "WrongCharacteristic", "WeightOverflow",
    "TruncationOverflow", "ZZ", "QQ_R", "FP", "ZP2", "PolyContext",
    "MultiPoly", "PDContext", "PDElement", "Witt2",
]


class RingMismatch(Exception):
    pass


class WrongCharacteristic(Exception):
    pass


class WeightOverflow(Exception):
    """A term left the modelled weight window."""


class TruncationOverflow(Exception):
    """An exponent needed a deeper p-power root than the model carries."""


class _Ring:
    __slots__ = ("name", "char", "modulus", "p")

    def __init__(self, name, char, modulus=None, p=None):
        self.name = name
        self.char = char
        self.modulus = modulus
        self.p = p

    def normalize(self, c):
        if self.modulus is not None:
            return int(c) % self.modulus
        if self.name == "Q":
            return Fraction(c)
        return int(c)

    def add(self, a, b):
        return self.normalize(a + b)

    def sub(self, a, b):
        return self.normalize(a - b)

    def mul(self, a, b):
        return self.normalize(a * b)

    def neg(self, a):
        return self.normalize(-a)

    def is_zero(self, a):
        return self.normalize(a) == 0

    def is_unit(self, a):
        a = self.normalize(a)
        if self.name == "Z":
            return a in (1, -1)
        if self.name == "Q":
            return a != 0
        if self.modulus == self.p:
            return a % self.p != 0
        return a % self.p != 0  # Z/p^2: units are the prime-to-p classes

    def inv(self, a):
        a = self.normalize(a)
        if not self.is_unit(a):
            raise ZeroDivisionError("not a unit in %s: %r" % (self.name, a))
        if self.name == "Z":
            return a
        if self.name == "Q":
            return Fraction(1) / a
        return pow(a, -1, self.modulus)

    def __repr__(self):
        return self.name


ZZ = _Ring("Z", 0)
QQ_R = _Ring("Q", 0)
_fp_cache = {}
_zp2_cache = {}


def FP(p):
    """The field F_p."""
    if p not in _fp_cache:
        _fp_cache[p] = _Ring("F%d" % p, p, modulus=p, p=p)
    return _fp_cache[p]


def ZP2(p):
    """The ring Z/p^2."""
    if p not in _zp2_cache:
        _zp2_cache[p] = _Ring("Z/%d^2" % p, 0, modulus=p * p, p=p)
    return _zp2_cache[p]


def _exp_norm(e):
    e = Fraction(e)
    if e.denominator == 1:
        return int(e)
    return e


class PolyContext:
    """Shared description of a polynomial/Laurent algebra.

    vars is a sequence of (name, weight) or (name, weight, invertible).
    max_weight, if set, caps monomial weights; depth=(p, m) restricts
    exponent denominators to divisors of p**m.
    """

    __slots__ = ("ring", "names", "weights", "invertible", "max_weight",
                 "depth")

    def __init__(self, ring, vars, max_weight=None, depth=None):
        self.ring = ring
        names, weights, inv = [], [], []
        for spec in vars:
            if len(spec) == 2:
                nm, w = spec
                iv = False
            else:
                nm, w, iv = spec
            names.append(nm)
            weights.append(_exp_norm(w))
            inv.append(bool(iv))
        self.names = tuple(names)
        self.weights = tuple(weights)
        self.invertible = tuple(inv)
        self.max_weight = max_weight
        self.depth = depth  # (p, m) or None

    def nvars(self):
        return len(self.names)

    def index(self, name):
        return self.names.index(name)

    def check_exponent(self, i, e):
        if e < 0 and not self.invertible[i]:
            raise ValueError("negative exponent on non-invertible %s"
                             % self.names[i])
        if self.depth is not None:
            p, m = self.depth
            d = Fraction(e).denominator
            if p ** m % d != 0:
                raise TruncationOverflow(
                    "exponent %s needs deeper %d-power roots than depth %d"
                    % (e, p, m))
        elif Fraction(e).denominator != 1:
            raise TruncationOverflow("fractional exponent in integral context")

    def mono_weight(self, exps):
        return sum((Fraction(e) * Fraction(w) for e, w in
                    zip(exps, self.weights)), Fraction(0))

    def compatible(self, other):
        return (self.ring is other.ring and self.names == other.names
                and self.weights == other.weights)

    def zero(self):
        return MultiPoly(self, {})

    def one(self):
        return MultiPoly(self, {(0,) * self.nvars(): self.ring.normalize(1)})

    def const(self, c):
        c = self.ring.normalize(c)
        if self.ring.is_zero(c):
            return self.zero()
        return MultiPoly(self, {(0,) * self.nvars(): c})

    def var(self, name, exp=1):
        i = self.index(name)
        exps = [0] * self.nvars()
        exps[i] = _exp_norm(exp)
        return self.monomial(tuple(exps), 1)

    def monomial(self, exps, coeff=1):
        return MultiPoly(self, {tuple(_exp_norm(e) for e in exps):
                                self.ring.normalize(coeff)})


class MultiPoly:
    """Sparse multivariate polynomial over a PolyContext.

    terms maps exponent tuples to nonzero normalised coefficients.

    >>> ctx = PolyContext(ZZ, [("x", 2), ("y", 2)])
    >>> f = ctx.var("x") + ctx.var("y")
    >>> (f * f).terms == {(2, 0): 1, (1, 1): 2, (0, 2): 1}
    True
    """

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx, terms):
        self.ctx = ctx
        self.terms = {}
        ring = ctx.ring
        for exps, c in terms.items():
            c = ring.normalize(c)
            if ring.is_zero(c):
                continue
            for i, e in enumerate(exps):
                ctx.check_exponent(i, e)
            if ctx.max_weight is not None:
                if ctx.mono_weight(exps) > ctx.max_weight:
                    raise WeightOverflow(
                        "monomial %s exceeds weight cap %s"
                        % (exps, ctx.max_weight))
            self.terms[exps] = c

    def _binop_ctx(self, other):
        if isinstance(other, MultiPoly):
            if not self.ctx.compatible(other.ctx):
                raise RingMismatch("incompatible polynomial contexts")
            return other
        return self.ctx.const(other)

    def __add__(self, other):
        other = self._binop_ctx(other)
        out = dict(self.terms)
        ring = self.ctx.ring
        for k, v in other.terms.items():
            nv = ring.add(out.get(k, 0), v)
            if ring.is_zero(nv):
                out.pop(k, None)
            else:
                out[k] = nv
        return MultiPoly(self.ctx, out)

    __radd__ = __add__

    def __neg__(self):
        ring = self.ctx.ring
        return MultiPoly(self.ctx, {k: ring.neg(v)
                                    for k, v in self.terms.items()})

    def __sub__(self, other):
        other = self._binop_ctx(other)
        return self + (-other)

    def __rsub__(self, other):
        return self.ctx.const(other) - self

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            ring = self.ctx.ring
            c = ring.normalize(other)
            return MultiPoly(self.ctx, {k: ring.mul(v, c)
                                        for k, v in self.terms.items()})
        other = self._binop_ctx(other)
        ring = self.ctx.ring
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                k = tuple(_exp_norm(a + b) for a, b in zip(e1, e2))
                nv = ring.add(out.get(k, 0), ring.mul(c1, c2))
                if ring.is_zero(nv):
                    out.pop(k, None)
                else:
                    out[k] = nv
        return MultiPoly(self.ctx, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("use monomial inversion explicitly")
        result = self.ctx.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.ctx.compatible(other.ctx) and self.terms == other.terms
        return self.terms == self.ctx.const(other).terms

    def is_zero(self):
        return not self.terms

    def coeff(self, exps):
        return self.terms.get(tuple(_exp_norm(e) for e in exps), 0)

    def weight_parts(self):
        parts = {}
        for exps, c in self.terms.items():
            parts.setdefault(self.ctx.mono_weight(exps), {})[exps] = c
        return {w: MultiPoly(self.ctx, t) for w, t in sorted(parts.items())}

    def is_homogeneous(self):
        return len(self.weight_parts()) <= 1

    def weight(self):
        ws = list(self.weight_parts())
        if not ws:
            return None
        if len(ws) > 1:
            raise ValueError("inhomogeneous polynomial has no single weight")
        return ws[0]

    def substitute(self, images):
        """Substitute variables; images maps names to MultiPoly.

        General polynomial images require nonnegative integer exponents;
        monomial images are allowed for any exponent.
        """
        ctx = None
        for v in images.values():
            ctx = v.ctx
            break
        if ctx is None:
            raise ValueError("empty substitution")
        out = ctx.zero()
        for exps, c in self.terms.items():
            term = ctx.const(c)
            for i, e in enumerate(exps):
                if e == 0:
                    continue
                img = images[self.ctx.names[i]]
                if len(img.terms) == 1:
                    (mexps, mc), = img.terms.items()
                    if not ctx.ring.is_unit(mc) and (e < 0):
                        raise ValueError("cannot invert coefficient")
                    k = tuple(_exp_norm(me * e) for me in mexps)
                    if isinstance(e, int) and e >= 0:
                        cc = mc ** e
                    else:
                        if mc == 1:
                            cc = 1
                        elif mc == -1:
                            cc = (-1) ** (e.numerator if isinstance(e, Fraction)
                                          else e)
                        else:
                            raise ValueError(
                                "fractional power of non-trivial coefficient")
                    term = term * MultiPoly(ctx, {k: cc})
                else:
                    if not (isinstance(e, int) and e >= 0):
                        raise ValueError(
                            "polynomial image needs integer exponent")
                    term = term * img ** e
            out = out + term
        return out

    def frobenius(self):
        """Relative Frobenius: x -> x^p on generators, coefficients fixed."""
        p = self.ctx.ring.p or self.ctx.ring.char
        if not p:
            raise WrongCharacteristic("frobenius needs p-typed coefficients")
        return MultiPoly(self.ctx,
                         {tuple(_exp_norm(e * p) for e in exps): c
                          for exps, c in self.terms.items()})

    def map_coeffs(self, fn, new_ring=None):
        ring = new_ring or self.ctx.ring
        if new_ring is None:
            ctx = self.ctx
        else:
            ctx = PolyContext(new_ring,
                              list(zip(self.ctx.names, self.ctx.weights,
                                       self.ctx.invertible)),
                              max_weight=self.ctx.max_weight,
                              depth=self.ctx.depth)
        return MultiPoly(ctx, {k: fn(v) for k, v in self.terms.items()})

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for exps, c in sorted(self.terms.items(),
                              key=lambda kv: tuple(map(Fraction, kv[0]))):
            mono = "*".join("%s^%s" % (n, e)
                            for n, e in zip(self.ctx.names, exps) if e != 0)
            bits.append("%s%s" % (c, "*" + mono if mono else ""))
        return " + ".join(bits)


def poly_div_int(poly, k):
    """Exact division of an integer polynomial by the integer k."""
    out = {}
    for exps, c in poly.terms.items():
        q, r = divmod(c, k)
        if r:
            raise ValueError("coefficient %d not divisible by %d" % (c, k))
        out[exps] = q
    return MultiPoly(poly.ctx, out)


# ---------------------------------------------------------------------------
# divided-power polynomial models


class PDContext:
    """PD envelope model D_I(R) in normal form.

    R is a (possibly p-root-deepened) polynomial ring over F_p or Z/p^2 on
    nvars generators of weight 1; I is generated by the given regular
    relator sequence, each relator either ('var', i) -- the generator x_i
    itself -- or ('diff', i, j) with i < j -- the difference x_i - x_j.

    Elements are kept in the normal form

        x^e * prod_j s_j^[k_j],

    where for a ('var', i) relator the exponent e_i lies in [0, 1), and
    for a ('diff', i, j) relator the exponent e_i lies in [0, 1) (integer
    parts are rewritten through x_i = x_j + s_j).  Distinct relators must
    have distinct i, ordered increasingly, and a difference target j must
    not itself be a leading index of an earlier relator.
    """

    __slots__ = ("ring", "p", "nvars", "names", "relators", "depth",
                 "max_weight")

    def __init__(self, ring, nvars, relators, depth=0, max_weight=None,
                 names=None):
        if ring.p is None:
            raise WrongCharacteristic("PD model needs F_p or Z/p^2")
        self.ring = ring
        self.p = ring.p
        self.nvars = nvars
        self.names = tuple(names or ("x%d" % (i + 1) for i in range(nvars)))
        lead = []
        for rel in relators:
            if rel[0] == "var":
                lead.append(rel[1])
            elif rel[0] == "diff":
                i, j = rel[1], rel[2]
                if not i < j:
                    raise ValueError("difference relator needs i < j")
                lead.append(i)
            else:
                raise ValueError("unknown relator kind %r" % (rel[0],))
        if lead != sorted(set(lead)):
            raise ValueError("relator leading indices must be strictly "
                             "increasing")
        for rel in relators:
            if rel[0] == "diff" and rel[2] in lead[:lead.index(rel[1]) + 1]:
                raise ValueError("difference target shadows an earlier "
                                 "leading index")
        self.relators = tuple(relators)
        self.depth = depth
        self.max_weight = max_weight

    # -- exponents ---------------------------------------------------------

    def check_exp(self, e):
        if e < 0:
            raise ValueError("negative exponent in PD model")
        d = Fraction(e).denominator
        if self.p ** self.depth % d != 0:
            raise TruncationOverflow(
                "exponent %s exceeds root depth %d" % (e, self.depth))

    def key_weight(self, key):
        exps, pd = key
        return (sum((Fraction(e) for e in exps), Fraction(0))
                + sum(pd))

    def zero(self):
        return PDElement(self, {})

    def one(self):
        return self.monomial((0,) * self.nvars, (0,) * len(self.relators))

    def monomial(self, exps, pd, coeff=1):
        exps = tuple(_exp_norm(e) for e in exps)
        pd = tuple(int(k) for k in pd)
        el = PDElement(self, {})
        el._accumulate(exps, pd, self.ring.normalize(coeff))
        return el

    def var(self, i, exp=1):
        exps = [0] * self.nvars
        exps[i] = _exp_norm(exp)
        return self.monomial(tuple(exps), (0,) * len(self.relators))

    def pd_gen(self, j, k=1):
        pd = [0] * len(self.relators)
        pd[j] = k
        return self.monomial((0,) * self.nvars, tuple(pd))

    # -- strand enumeration --------------------------------------------------

    def _exp_values_upto(self, wmax):
        # all admissible single-variable exponents of weight <= wmax
        step = Fraction(1, self.p ** self.depth)
        vals = []
        v = Fraction(0)
        while v <= wmax:
            vals.append(_exp_norm(v))
            v += step
        return vals

    def _lead_bounds(self):
        # per-variable upper bound (exclusive) from the normal form
        bounds = [None] * self.nvars
        for rel in self.relators:
            bounds[rel[1]] = Fraction(1)
        return bounds

    def strand_basis(self, w):
        """Ordered list of normal-form keys of exact weight w."""
        w = Fraction(w)
        if w < 0:
            return []
        bounds = self._lead_bounds()
        step = Fraction(1, self.p ** self.depth)
        keys = []

        def rec_vars(i, remaining, exps):
            if i == self.nvars:
                rec_pd(0, remaining, exps, [])
                return
            cap = remaining
            if bounds[i] is not None:
                cap = min(cap, Fraction(1) - step)
            v = Fraction(0)
            while v <= cap:
                exps.append(_exp_norm(v))
                rec_vars(i + 1, remaining - v, exps)
                exps.pop()
                v += step

        def rec_pd(j, remaining, exps, pd):
            if j == len(self.relators):
                if remaining == 0:
                    keys.append((tuple(exps), tuple(pd)))
                return
            if j == len(self.relators) - 1:
                if remaining.denominator == 1 and remaining >= 0:
                    rec_pd(j + 1, Fraction(0), exps, pd + [int(remaining)])
                else:
                    rec_pd(j + 1, remaining, exps, pd + [0])
                return
            k = 0
            while k <= remaining:
                rec_pd(j + 1, remaining - k, exps, pd + [k])
                k += 1

        if not self.relators:
            def rec_only(i, remaining, exps):
                if i == self.nvars:
                    if remaining == 0:
                        keys.append((tuple(exps), ()))
                    return
                if i == self.nvars - 1:
                    if remaining >= 0 and (
                            Fraction(remaining).denominator
                            <= self.p ** self.depth and
                            self.p ** self.depth
                            % Fraction(remaining).denominator == 0):
                        keys.append((tuple(exps) + (_exp_norm(remaining),), ()))
                    return
                v = Fraction(0)
                while v <= remaining:
                    exps.append(_exp_norm(v))
                    rec_only(i + 1, remaining - v, exps)
                    exps.pop()
                    v += step
            rec_only(0, w, [])
        else:
            rec_vars(0, w, [])
        keys.sort(key=_key_sort)
        return keys


def _key_sort(key):
    exps, pd = key
    return (tuple(Fraction(e) for e in exps), pd)


class PDElement:
    """Element of a PDContext in normal form."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx, terms):
        self.ctx = ctx
        self.terms = {k: v for k, v in terms.items()
                      if not ctx.ring.is_zero(v)}

    # normal-form accumulation: rewrite a raw monomial into basis keys

    def _accumulate(self, exps, pd, coeff):
        ctx = self.ctx
        ring = ctx.ring
        if ring.is_zero(coeff):
            return
        for e in exps:
            ctx.check_exp(e)
        # find first relator whose leading variable has integer part >= 1
        for j, rel in enumerate(ctx.relators):
            i = rel[1]
            e = Fraction(exps[i])
            if e >= 1:
                a = int(e)  # integer part
                frac = _exp_norm(e - a)
                if rel[0] == "var":
                    # x_i^a s^[k] = ((k+a)!/k!) s^[k+a]
                    k = pd[j]
                    scale = 1
                    for t in range(k + 1, k + a + 1):
                        scale *= t
                    ne = list(exps)
                    ne[i] = frac
                    npd = list(pd)
                    npd[j] = k + a
                    self._accumulate(tuple(ne), tuple(npd),
                                     ring.mul(coeff, ring.normalize(scale)))
                else:
                    # x_i^a = (x_j' + s)^a, s^c s^[k] = ((c+k)!/k!) s^[c+k]
                    tgt = rel[2]
                    k = pd[j]
                    for c in range(a + 1):
                        scale = comb(a, c)
                        for t in range(k + 1, k + c + 1):
                            scale *= t
                        ne = list(exps)
                        ne[i] = frac
                        ne[tgt] = _exp_norm(Fraction(ne[tgt]) + (a - c))
                        npd = list(pd)
                        npd[j] = k + c
                        self._accumulate(tuple(ne), tuple(npd),
                                         ring.mul(coeff,
                                                  ring.normalize(scale)))
                return
        # normal form reached
        key = (exps, pd)
        if ctx.max_weight is not None and ctx.key_weight(key) > ctx.max_weight:
            raise WeightOverflow("PD term of weight %s exceeds cap %s"
                                 % (ctx.key_weight(key), ctx.max_weight))
        nv = ring.add(self.terms.get(key, 0), coeff)
        if ring.is_zero(nv):
            self.terms.pop(key, None)
        else:
            self.terms[key] = nv

    def _require(self, other):
        if self.ctx is not other.ctx:
            raise RingMismatch("PD elements from different models")

    def __add__(self, other):
        self._require(other)
        out = PDElement(self.ctx, self.terms)
        ring = self.ctx.ring
        for k, v in other.terms.items():
            nv = ring.add(out.terms.get(k, 0), v)
            if ring.is_zero(nv):
                out.terms.pop(k, None)
            else:
                out.terms[k] = nv
        return out

    def __neg__(self):
        ring = self.ctx.ring
        return PDElement(self.ctx, {k: ring.neg(v)
                                    for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        ring = self.ctx.ring
        c = ring.normalize(c)
        return PDElement(self.ctx, {k: ring.mul(v, c)
                                    for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, PDElement):
            return self.scale(other)
        self._require(other)
        ctx = self.ctx
        ring = ctx.ring
        out = PDElement(ctx, {})
        for (e1, k1), c1 in self.terms.items():
            for (e2, k2), c2 in other.terms.items():
                exps = tuple(_exp_norm(a + b) for a, b in zip(e1, e2))
                scale = 1
                pd = []
                for a, b in zip(k1, k2):
                    scale *= comb(a + b, a)
                    pd.append(a + b)
                cc = ring.mul(ring.mul(c1, c2), ring.normalize(scale))
                out._accumulate(exps, tuple(pd), cc)
        return out

    __rmul__ = __mul__

    def __pow__(self, n):
        out = self.ctx.one()
        for _ in range(n):
            out = out * self
        return out

    def divided_power(self, n):
        """gamma_n of an element of the PD ideal, for n < p.

        For n < p this is x^n / n!, which is all the engine ever needs
        (higher divided powers of sums are never formed).
        """
        if n >= self.ctx.p:
            raise ValueError("divided_power only defined here for n < p")
        inv = self.ctx.ring.inv(factorial(n))
        return (self ** n).scale(inv)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, PDElement) and self.ctx is other.ctx
                and self.terms == other.terms)

    def coeff(self, key):
        return self.terms.get(key, 0)

    def weight_parts(self):
        parts = {}
        for key, c in self.terms.items():
            parts.setdefault(self.ctx.key_weight(key), {})[key] = c
        return {w: PDElement(self.ctx, t) for w, t in sorted(parts.items())}

    def pd_degree_min(self):
        """Smallest total PD exponent among terms (None if zero)."""
        if not self.terms:
            return None
        return min(sum(k) for (_, k) in self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        ctx = self.ctx
        bits = []
        for (exps, pd), c in sorted(self.terms.items(),
                                    key=lambda kv: _key_sort(kv[0])):
            parts = []
            for n, e in zip(ctx.names, exps):
                if e != 0:
                    parts.append("%s^%s" % (n, e))
            for j, k in enumerate(pd):
                if k:
                    parts.append("s%d^[%d]" % (j + 1, k))
            bits.append("%s%s" % (c, "*" + "*".join(parts) if parts else ""))
        return " + ".join(bits)


# ---------------------------------------------------------------------------
# length-2 Witt vectors


class Witt2:
    """Length-2 Witt vector (a0, a1) over an F_p polynomial context.

    Addition carries with -sum_{0<i<p} (1/p) C(p,i) a0^i b0^{p-i}; the
    carry is computed on integral lifts and divided exactly.

    >>> ctx = PolyContext(FP(3), [("x", 1)])
    >>> x = ctx.var("x")
    >>> w = Witt2(x, ctx.zero()) + Witt2(x, ctx.zero())
    >>> w.a0 == 2 * x
    True
    """

    __slots__ = ("a0", "a1")

    def __init__(self, a0, a1):
        if a0.ctx.ring.modulus != a0.ctx.ring.p:
            raise WrongCharacteristic("Witt2 components live over F_p")
        if a0.ctx is not a1.ctx:
            raise RingMismatch("Witt2 components from different contexts")
        self.a0 = a0
        self.a1 = a1

    @property
    def p(self):
        return self.a0.ctx.ring.p

    def _lift(self, f):
        zctx = _int_ctx(f.ctx)
        return MultiPoly(zctx, {k: int(v) % self.p for k, v in f.terms.items()})

    def _drop(self, f):
        ctx = self.a0.ctx
        return MultiPoly(ctx, {k: v for k, v in f.terms.items()})

    def __add__(self, other):
        p = self.p
        la0, lb0 = self._lift(self.a0), self._lift(other.a0)
        carry = la0.ctx.zero()
        for i in range(1, p):
            c = comb(p, i) // p
            carry = carry + (la0 ** i) * (lb0 ** (p - i)) * (-c)
        a0 = self.a0 + other.a0
        a1 = self.a1 + other.a1 + self._drop(carry)
        return Witt2(a0, a1)

    def __neg__(self):
        p = self.p
        if p == 2:
            # -(a0, a1) = (a0, a0^2 + a1) in W_2(F_2-algebras)
            return Witt2(self.a0, self.a1 + self.a0 * self.a0)
        return Witt2(-self.a0, -self.a1)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        p = self.p
        a0 = self.a0 * other.a0
        a1 = (self.a0 ** p) * other.a1 + (other.a0 ** p) * self.a1
        return Witt2(a0, a1)

    def ghost(self):
        """Integral ghost components (w0, w1) of the canonical lift."""
        la0, la1 = self._lift(self.a0), self._lift(self.a1)
        return (la0, la0 ** self.p + la1 * self.p)

    def __eq__(self, other):
        return self.a0 == other.a0 and self.a1 == other.a1

    def __repr__(self):
        return "Witt2(%r, %r)" % (self.a0, self.a1)


_int_ctx_cache = {}


def _int_ctx(ctx):
    key = (ctx.names, ctx.weights, ctx.invertible)
    if key not in _int_ctx_cache:
        _int_ctx_cache[key] = PolyContext(
            ZZ, list(zip(ctx.names, ctx.weights, ctx.invertible)))
    return _int_ctx_cache[key]


def teichmuller_scalar(c, p):
    """Teichmuller lift of c in F_p to Z/p^2 (the p-th power of any lift)."""
    return pow(int(c) % p, p, p * p)


# functional aliases for the operator methods above


def poly_add(f, g):
    return f + g


def poly_mul(f, g):
    return f * g


def poly_substitute(f, assignment):
    return f.substitute(assignment)


def pd_mul(a, b):
    return a * b


def relative_frobenius(f):
    """x -> x^p on every generator, coefficients untouched."""
    return f.frobenius()


def frobenius_twist(f):
    """Coefficient-side Frobenius twist.

    Over F_p and Z/p^2 (Teichmuller-free coordinates) the twist acts
    trivially on coefficients, so this is the identity; it still guards
    the characteristic.
    """
    if f.ctx.ring.p is None and f.ctx.ring.char == 0:
        raise WrongCharacteristic("twist needs p-typed coefficients")
    return f


def witt2_add(a, b):
    return a + b


def witt2_mul(a, b):
    return a * b
