"""Buchberger-based ideal arithmetic.

Ideals live in a Ring (possibly a quotient); every computation appends the
ring's relation polynomials to the generator list and works in the free
polynomial ring, so quotient rings need no separate machinery.  Bases are
reduced and monic, which makes ideal equality a basis comparison.
"""

from .polynomials import Poly, Ring, elimination_order


# ---------------------------------------------------------------------------
# division and Buchberger

def _divides(e1, e2):
    return all(a <= b for a, b in zip(e1, e2))


def normal_form(f, basis):
    """Fully reduced remainder of f modulo a list of polynomials."""
    ring = f.ring
    field = ring.field
    key = ring.order.key
    leads = [(g.leading(), g) for g in basis if not g.is_zero()]
    remainder = {}
    work = dict(f.terms)
    while work:
        e = max(work, key=key)
        c = work.pop(e)
        hit = None
        for (le, lc), g in leads:
            if _divides(le, e):
                hit = (le, lc, g)
                break
        if hit is None:
            remainder[e] = c
            continue
        le, lc, g = hit
        shift = tuple(a - b for a, b in zip(e, le))
        factor = field.div(c, lc)
        for ge, gc in g.terms.items():
            if ge == le:
                continue
            te = tuple(a + b for a, b in zip(ge, shift))
            s = field.sub(work.get(te, field.zero), field.mul(factor, gc))
            if s == field.zero:
                work.pop(te, None)
            else:
                work[te] = s
    return Poly(ring, remainder, reduce=False)


def s_polynomial(f, g):
    ring = f.ring
    field = ring.field
    (ef, cf) = f.leading()
    (eg, cg) = g.leading()
    lcm = tuple(max(a, b) for a, b in zip(ef, eg))
    mf = tuple(a - b for a, b in zip(lcm, ef))
    mg = tuple(a - b for a, b in zip(lcm, eg))
    return (f.mul_monomial(mf, field.inv(cf))
            - g.mul_monomial(mg, field.inv(cg)))


def reduced_groebner_basis(gens):
    """Reduced, monic Groebner basis of the ideal generated by gens.

    Plain Buchberger with the coprime-leading-term criterion; adequate for
    the desk-scale ideals this package handles.
    """
    basis = []
    for g in gens:
        if not g.is_zero():
            basis.append(g.monic())
    if not basis:
        return []
    basis.sort(key=lambda p: p.sort_key())
    pairs = [(i, j) for j in range(len(basis)) for i in range(j)]
    while pairs:
        i, j = pairs.pop()
        fi, fj = basis[i], basis[j]
        ei, ej = fi.leading_monomial(), fj.leading_monomial()
        if all(a == 0 or b == 0 for a, b in zip(ei, ej)):
            continue  # coprime leading terms: S-poly reduces to zero
        s = normal_form(s_polynomial(fi, fj), basis)
        if not s.is_zero():
            basis.append(s.monic())
            pairs.extend((k, len(basis) - 1) for k in range(len(basis) - 1))
    return _reduce_basis(basis)


def _reduce_basis(basis):
    # minimalize: drop generators whose lead is divisible by another lead
    basis = [g for g in basis if not g.is_zero()]
    leads = [g.leading_monomial() for g in basis]
    keep = []
    for i, g in enumerate(basis):
        if any(j != i and _divides(leads[j], leads[i])
               and (leads[j] != leads[i] or j < i) for j in range(len(basis))):
            continue
        keep.append(g)
    # inter-reduce tails
    reduced = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1:]
        r = normal_form(g, others)
        if not r.is_zero():
            reduced.append(r.monic())
    reduced.sort(key=lambda p: p.sort_key())
    return reduced


# ---------------------------------------------------------------------------
# ideals

class Ideal:
    """Finitely generated ideal of a (possibly quotient) ring.

    The cached basis is the reduced Groebner basis of (generators +
    ambient relations), computed in the free polynomial ring; two ideals
    of the same ring are equal iff their bases coincide.
    """

    __slots__ = ("ring", "gens", "_basis")

    def __init__(self, ring, gens):
        self.ring = ring
        cleaned = []
        for g in gens:
            g = ring.coerce(g)
            if not g.is_zero():
                cleaned.append(g)
        self.gens = tuple(cleaned)
        self._basis = None

    def basis(self):
        if self._basis is None:
            free = self.ring.free()
            gens = [Poly(free, g.terms, reduce=False) for g in self.gens]
            gens.extend(Poly(free, t, reduce=False) for t in self.ring.relations)
            self._basis = tuple(reduced_groebner_basis(gens))
        return self._basis

    def groebner(self):
        """The same ideal presented by its reduced basis."""
        basis = [Poly(self.ring, g.terms, reduce=False) for g in self.basis()
                 if not self.ring.reduce(g).is_zero()]
        out = Ideal(self.ring, basis)
        free = self.ring.free()
        out._basis = self.basis()
        return out

    def contains(self, f):
        f = self.ring.coerce(f)
        free = self.ring.free()
        return normal_form(Poly(free, f.terms, reduce=False),
                           list(self.basis())).is_zero()

    def normal_form(self, f):
        f = self.ring.coerce(f)
        free = self.ring.free()
        nf = normal_form(Poly(free, f.terms, reduce=False), list(self.basis()))
        return Poly(self.ring, nf.terms, reduce=False)

    def is_zero(self):
        return all(self.ring.reduce(Poly(self.ring.free(), g.terms,
                                         reduce=False)).is_zero()
                   for g in self.basis())

    def is_unit_ideal(self):
        basis = self.basis()
        return len(basis) == 1 and basis[0].is_unit()

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        if other.ring != self.ring:
            return False
        return [g.terms for g in self.basis()] == [g.terms for g in other.basis()]

    def __hash__(self):
        return hash((self.ring, tuple(frozenset(g.terms.items())
                                      for g in self.basis())))

    def __add__(self, other):
        self._check(other)
        return Ideal(self.ring, self.gens + other.gens)

    def __mul__(self, other):
        self._check(other)
        if not self.gens or not other.gens:
            return Ideal(self.ring, [])
        prods = [a * b for a in self.gens for b in other.gens]
        return Ideal(self.ring, prods).groebner()

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative ideal power")
        result = Ideal(self.ring, [self.ring.one()])
        for _ in range(n):
            result = result * self
        return result

    def _check(self, other):
        if not isinstance(other, Ideal) or other.ring != self.ring:
            raise ValueError("ideals from different rings")

    def __repr__(self):
        gens = ", ".join(str(g) for g in self.gens) or "0"
        return f"Ideal({gens})"


# ---------------------------------------------------------------------------
# derived operations

def _intersect_free(free, gens_a, gens_b):
    """Intersection of two free-ring ideals, via w·A + (1-w)·B elimination."""
    w = free.fresh_name("w")
    widx = free.nvars
    ext = free.with_extra_vars([w], order=elimination_order(free.nvars + 1, [widx]))
    wvar = ext.var(w)
    one = ext.one()
    gens = [free.lift(g, ext) * wvar for g in gens_a]
    gens.extend(free.lift(g, ext) * (one - wvar) for g in gens_b)
    basis = reduced_groebner_basis(gens)
    kept = []
    for g in basis:
        if g.degree_in(w) <= 0:
            terms = {e[:-1]: c for e, c in g.terms.items()}
            kept.append(Poly(free, terms, reduce=False))
    return kept


def _with_relations(I):
    free = I.ring.free()
    gens = [Poly(free, g.terms, reduce=False) for g in I.gens]
    gens.extend(Poly(free, t, reduce=False) for t in I.ring.relations)
    return free, gens


def intersect(I, J):
    """I ∩ J in the (possibly quotient) ring of both ideals."""
    I._check(J)
    ring = I.ring
    free, gens_a = _with_relations(I)
    _, gens_b = _with_relations(J)
    kept = _intersect_free(free, gens_a, gens_b)
    return Ideal(ring, [Poly(ring, g.terms) for g in kept]).groebner()


def _colon_single(I, f):
    """(I : f) for a single element.

    Computed upstairs: ((I + relations) : f) in the free polynomial ring
    equals (1/f)·((I + relations) ∩ (f)) there, and every generator of the
    intersection is exactly divisible by f because the free ring is a
    domain.  The result contracts to the quotient-ring colon.
    """
    ring = I.ring
    free, gens_a = _with_relations(I)
    ff = Poly(free, f.terms, reduce=False)
    if ff.is_zero():
        return Ideal(ring, [ring.one()])
    meet = _intersect_free(free, gens_a, [ff])
    quotients = []
    for g in meet:
        q = _exact_poly_div(g, ff)
        if q is None:
            raise ArithmeticError("inexact colon division in the free ring")
        quotients.append(Poly(ring, q.terms))
    return Ideal(ring, quotients).groebner()


def _exact_poly_div(f, g):
    """Quotient f/g in the free polynomial ring, or None if not exact."""
    ring = f.ring
    field = ring.field
    if g.is_zero():
        return None
    if f.is_zero():
        return ring.zero()
    (eg, cg) = g.leading()
    q = {}
    rest = f
    while not rest.is_zero():
        e, c = rest.leading()
        if not _divides(eg, e):
            return None
        shift = tuple(a - b for a, b in zip(e, eg))
        factor = field.div(c, cg)
        q[shift] = factor
        rest = rest - g.mul_monomial(shift, factor)
    return Poly(ring, q, reduce=False)


def ideal_colon(I, J):
    """(I : J) = {f : f·J ⊆ I}."""
    I._check(J)
    if not J.gens:
        return Ideal(I.ring, [I.ring.one()])
    result = None
    for f in J.gens:
        part = _colon_single(I, f)
        result = part if result is None else intersect(result, part)
    return result.groebner()


def saturate(I, m):
    """(I : m^∞) together with the stabilization exponent.

    The exponent is the least N with (I : m^N) = (I : m^(N+1)).
    """
    I._check(m)
    current = I.groebner()
    exponent = 0
    while True:
        nxt = ideal_colon(current, m)
        if nxt == current:
            return current, exponent
        current = nxt
        exponent += 1


INFINITE = None


def artinian_dim(I):
    """k-dimension of ring/(I + relations); None when not Artinian.

    Counts standard monomials of the leading-term ideal.  Finiteness is
    detected structurally: the quotient is finite-dimensional iff every
    variable has a pure power among the leading terms.
    """
    basis = I.basis()
    ring = I.ring
    n = ring.free().nvars
    leads = [g.leading_monomial() for g in basis]
    if any(sum(e) == 0 for e in leads):
        return 0  # unit ideal
    for i in range(n):
        if not any(all(v == 0 for j, v in enumerate(e) if j != i) and e[i] > 0
                   for e in leads):
            return INFINITE
    # BFS over monomials not divisible by any leading term
    seen = {(0,) * n}
    queue = [(0,) * n]
    while queue:
        e = queue.pop()
        for i in range(n):
            nxt = e[:i] + (e[i] + 1,) + e[i + 1:]
            if nxt in seen:
                continue
            if any(_divides(le, nxt) for le in leads):
                continue
            seen.add(nxt)
            queue.append(nxt)
    return len(seen)


def eliminate(I, names):
    """Generators of I ∩ k[remaining variables], as an ideal there.

    Returns the contracted ideal in a ring on the remaining variables.
    """
    ring = I.ring
    free = ring.free()
    idx = [free._index[n] for n in names]
    order = elimination_order(free.nvars, idx)
    elim_ring = Ring(free.field, free.names, order)
    gens = [Poly(elim_ring, g.terms) for g in I.gens]
    gens.extend(Poly(elim_ring, t) for t in ring.relations)
    basis = reduced_groebner_basis(gens)
    remaining = [n for n in free.names if n not in names]
    from .polynomials import GREVLEX
    small = Ring(free.field, remaining, GREVLEX)
    kept = []
    for g in basis:
        if all(g.degree_in(n) <= 0 for n in names):
            terms = {}
            for e, c in g.terms.items():
                terms[tuple(e[free._index[n]] for n in remaining)] = c
            kept.append(Poly(small, terms))
    return Ideal(small, kept).groebner()
