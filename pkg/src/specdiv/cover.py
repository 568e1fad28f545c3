"""Finite flat covers of an affine chart: S = R[x]/(P) and friends.

A ``CoverChart`` presents a ring S that is free of finite rank over a base
chart ring R, together with the structure map R -> S and a distinguished
R-basis.  Two presentations are supported:

* MONIC: S = R[x]/(P) for a monic P, with basis 1, x, ..., x^(r-1);
* FREE: an explicit quotient ring with a monomial basis and monomial
  images of the base variables (enough for singular examples such as the
  quotient of a tacnode by its sign involution).

On top of the cover sit element norms/traces (determinant and trace of
multiplication matrices), fractional ideals, lattice norms of fractional
ideals over principal-ideal base charts, and a bounded isomorphism test.
"""

from dataclasses import dataclass

from .errors import CoverMismatchError, UnsupportedBaseError
from .groebner import Ideal, ideal_colon, intersect
from .polynomials import Poly, Ring, elimination_order, reduce_fraction
from .matrices import RingMatrix, smith_normal_form


class CoverChart:
    """A ring S free of rank n over a base chart ring R."""

    def __init__(self, base, ring, basis, base_images, monic_data=None):
        self.base = base
        self.ring = ring
        self.basis = tuple(basis)
        self.base_images = dict(base_images)
        self.monic_data = monic_data  # (variable name, coefficient tuple)
        self.degree = len(self.basis)
        self.twist_trivialized = True
        self._mult_cache = {}
        self._validate()

    # -- constructors ----------------------------------------------------

    @classmethod
    def monic(cls, base, var, coeffs):
        """S = R[var]/(P), P = var^r + a_1 var^(r-1) + ... + a_r."""
        coeffs = [base.coerce(c) for c in coeffs]
        r = len(coeffs)
        if r < 1:
            raise ValueError("monic cover needs degree at least 1")
        if var in base.names:
            raise ValueError(f"cover variable {var!r} collides with the base")
        # rank the cover variable above every base monomial so that the
        # defining polynomial always leads with var^r
        order = elimination_order(base.nvars + 1, [base.nvars])
        ambient = base.with_extra_vars([var], order=order)
        x = ambient.var(var)
        P = x ** r
        for i, a in enumerate(coeffs):
            P = P + base.lift(a, ambient) * x ** (r - 1 - i)
        ring = ambient.quotient([P])
        x = ring.var(var)
        basis = [x ** i for i in range(r)]
        images = {n: ring.var(n) for n in base.names}
        return cls(base, ring, basis, images, monic_data=(var, tuple(coeffs)))

    @classmethod
    def free(cls, base, ring, basis, base_images):
        """Cover with an explicit monomial basis and monomial images."""
        basis = [ring.coerce(b) for b in basis]
        images = {n: ring.coerce(v) for n, v in base_images.items()}
        return cls(base, ring, basis, images)

    def _validate(self):
        if set(self.base_images) != set(self.base.names):
            raise ValueError("base images must cover exactly the base variables")
        # the structure map must kill the base relations
        for t in self.base.relations:
            rel = Poly(self.base.free(), t, reduce=False)
            if not self.to_cover(rel).is_zero():
                raise ValueError("base relations do not map to zero in the cover")
        # multiplication table must close over the declared basis
        for bi in self.basis:
            for bj in self.basis:
                self.coordinates(bi * bj)

    # -- structure map and coordinates ------------------------------------

    def to_cover(self, f):
        """Image of a base element under the structure map R -> S."""
        if not (isinstance(f, Poly) and f.ring == self.base.free()):
            f = self.base.coerce(f)
        return f.subs(dict(self.base_images))

    def coordinates(self, f):
        """Coefficients c_1..c_n in R with f = sum c_j * basis_j.

        MONIC covers split on powers of the cover variable.  FREE covers
        decompose monomial by monomial: each normal-form monomial must
        factor as (image of a base monomial) * (basis monomial); the
        result is verified against the structure map.
        """
        f = self.ring.coerce(f)
        if self.monic_data is not None:
            coords = self._coordinates_monic(f)
        else:
            coords = self._coordinates_free(f)
        return coords

    def _coordinates_monic(self, f):
        var, _ = self.monic_data
        r = self.degree
        coords = []
        for i in range(r):
            ci = f.coefficient_of(var, i)
            terms = {}
            for e, c in ci.terms.items():
                reduced = tuple(v for j, v in enumerate(e)
                                if self.ring.names[j] != var)
                terms[reduced] = c
            coords.append(Poly(self.base, terms))
        if f.degree_in(var) >= r:
            raise CoverMismatchError("element not reduced below the cover degree")
        return coords

    def _coordinates_free(self, f):
        base_exps = {}
        for name, img in self.base_images.items():
            if len(img.terms) != 1:
                raise UnsupportedBaseError(
                    "free covers need monomial images of the base variables")
            (e, c), = img.terms.items()
            if c != self.ring.field.one:
                raise UnsupportedBaseError("base images must be monic monomials")
            base_exps[name] = e
        basis_exps = []
        for b in self.basis:
            if len(b.terms) != 1:
                raise UnsupportedBaseError("free covers need a monomial basis")
            (e, c), = b.terms.items()
            basis_exps.append(e)
        zero_base = self.base.zero()
        coords = [dict() for _ in self.basis]
        for e, c in f.terms.items():
            hit = None
            for j, be in enumerate(basis_exps):
                if all(a >= b for a, b in zip(e, be)):
                    residual = tuple(a - b for a, b in zip(e, be))
                    combo = _monomial_preimage(residual, base_exps,
                                               list(self.base.names))
                    if combo is not None:
                        hit = (j, combo)
                        break
            if hit is None:
                raise CoverMismatchError(
                    f"monomial with exponents {e} does not decompose over the basis")
            j, combo = hit
            exp = tuple(combo[n] for n in self.base.names)
            coords[j][exp] = self.ring.field.add(
                coords[j].get(exp, self.ring.field.zero), c)
        out = [Poly(self.base, terms) for terms in coords]
        # verify: the decomposition must reproduce f through the structure map
        check = self.ring.zero()
        for cj, bj in zip(out, self.basis):
            check = check + self.to_cover(cj) * bj
        if check != f:
            raise CoverMismatchError("coordinate decomposition failed verification")
        return out

    # -- multiplication matrices, norm, trace ------------------------------

    def mult_matrix(self, f):
        """Matrix over R of multiplication by f in the declared basis."""
        f = self.ring.coerce(f)
        key = frozenset(f.terms.items())
        cached = self._mult_cache.get(key)
        if cached is not None:
            return cached
        cols = [self.coordinates(f * b) for b in self.basis]
        mat = RingMatrix(self.base,
                         [[cols[j][i] for j in range(self.degree)]
                          for i in range(self.degree)])
        if len(self._mult_cache) < 64:
            self._mult_cache[key] = mat
        return mat

    def element_norm(self, f):
        """Determinant of multiplication by f: the norm down to R."""
        return self.mult_matrix(f).det()

    def element_trace(self, f):
        """Trace of multiplication by f."""
        return self.mult_matrix(f).trace()

    def extend_ideal(self, I):
        """Extension of a base ideal along the structure map."""
        if I.ring != self.base:
            raise CoverMismatchError("ideal does not live on the base chart")
        return Ideal(self.ring, [self.to_cover(g) for g in I.gens])

    def coefficients(self):
        """Monic defining coefficients (a_1, ..., a_r); MONIC covers only."""
        if self.monic_data is None:
            raise UnsupportedBaseError("not a monic cover")
        return self.monic_data[1]

    def base_is_principal_chart(self):
        return self.base.nvars == 1 and not self.base.is_quotient

    def __repr__(self):
        return f"CoverChart({self.ring!r} over {self.base!r}, rank {self.degree})"


def _monomial_preimage(residual, base_exps, names, _depth=0):
    """Write an exponent vector as a nonneg combination of image exponents.

    Returns {base variable: exponent} or None.  Bounded DFS; image
    exponent vectors are small at desk scale.
    """
    if all(v == 0 for v in residual):
        return {n: 0 for n in names}
    for n in names:
        e = base_exps[n]
        if any(a > b for a, b in zip(e, residual)):
            continue
        rest = tuple(b - a for a, b in zip(e, residual))
        sub = _monomial_preimage(rest, base_exps, names, _depth + 1)
        if sub is not None:
            sub = dict(sub)
            sub[n] += 1
            return sub
    return None


# ---------------------------------------------------------------------------
# fractional ideals

_REGULARITY_SEARCH = 8


class FractionalIdeal:
    """A finitely generated submodule of the total quotient ring.

    Stored as (integral numerator ideal) / (regular denominator).  The
    numerator must contain a regular element (nondegeneracy); the
    denominator must be a nonzerodivisor.
    """

    __slots__ = ("ring", "numerator", "denominator", "_regular_elt")

    def __init__(self, ring, gens, denominator=None, _validated=False):
        self.ring = ring
        if isinstance(gens, Ideal):
            self.numerator = gens
        else:
            self.numerator = Ideal(ring, gens)
        den = ring.one() if denominator is None else ring.coerce(denominator)
        self.denominator = den
        self._regular_elt = None
        if not _validated:
            if not is_regular(ring, den):
                raise ValueError(f"denominator {den} is a zero divisor")
            if self.regular_element() is None:
                raise ValueError("numerator contains no regular element "
                                 "(degenerate fractional ideal)")

    def regular_element(self):
        """Some regular element of the numerator, or None."""
        if self._regular_elt is not None:
            return self._regular_elt
        candidates = list(self.numerator.gens) + list(self.numerator.basis())
        seen = []
        for g in candidates:
            g = self.ring.coerce(g) if not isinstance(g, Poly) else g
            g = Poly(self.ring, g.terms)
            if g.is_zero() or any(g == s for s in seen):
                continue
            seen.append(g)
            if is_regular(self.ring, g):
                self._regular_elt = g
                return g
        # small sums of generators occasionally succeed where single
        # generators fail
        gens = [Poly(self.ring, g.terms) for g in self.numerator.gens]
        for i in range(len(gens)):
            for j in range(i + 1, len(gens)):
                g = gens[i] + gens[j]
                if not g.is_zero() and is_regular(self.ring, g):
                    self._regular_elt = g
                    return g
        return None

    def scaled(self, f):
        """f * J for a ring element f."""
        f = self.ring.coerce(f)
        gens = [f * g for g in self.numerator.gens]
        return FractionalIdeal(self.ring, gens, self.denominator)

    def __mul__(self, other):
        if not isinstance(other, FractionalIdeal) or other.ring != self.ring:
            raise ValueError("fractional ideals from different rings")
        num = self.numerator * other.numerator
        den = self.denominator * other.denominator
        out = FractionalIdeal(self.ring, num, den, _validated=True)
        out._regular_elt = None
        return out

    def __eq__(self, other):
        if not isinstance(other, FractionalIdeal):
            return NotImplemented
        if other.ring != self.ring:
            return False
        # I1/d1 == I2/d2  iff  d2*I1 == d1*I2 as integral ideals
        left = Ideal(self.ring, [other.denominator * g
                                 for g in self.numerator.gens])
        right = Ideal(self.ring, [self.denominator * g
                                  for g in other.numerator.gens])
        return left == right

    def __hash__(self):
        raise TypeError("fractional ideals are not hashable")

    def colon(self, other):
        """(self : other) = {f in Frac(S) : f*other ⊆ self}."""
        if other.ring != self.ring:
            raise ValueError("fractional ideals from different rings")
        e = other.regular_element()
        scaled = Ideal(self.ring, [other.denominator * e * g
                                   for g in self.numerator.gens])
        num = ideal_colon(scaled, other.numerator)
        den = self.denominator * e
        return FractionalIdeal(self.ring, num, den, _validated=True)

    def inverse(self):
        """(S : self), the inverse fractional ideal."""
        unit = FractionalIdeal(self.ring, [self.ring.one()], _validated=True)
        return unit.colon(self)

    def is_invertible(self):
        product = self * self.inverse()
        return product == FractionalIdeal(self.ring, [self.ring.one()],
                                          _validated=True)

    def __repr__(self):
        gens = ", ".join(str(g) for g in self.numerator.gens) or "0"
        if self.denominator.is_unit() and self.denominator == self.ring.one():
            return f"({gens})"
        return f"({gens})/({self.denominator})"


def is_regular(ring, f):
    """True iff f is a nonzerodivisor: ((0) : f) = (0)."""
    f = ring.coerce(f)
    if f.is_zero():
        return False
    if not ring.is_quotient:
        return True
    col = ideal_colon(Ideal(ring, []), Ideal(ring, [f]))
    return col.is_zero()


# ---------------------------------------------------------------------------
# lattice norm of a fractional ideal over a principal-ideal chart

def ideal_norm(cover, J):
    """Norm of a fractional ideal down to a k[t] base chart.

    The pushforward of J is an R-lattice inside R^n (coordinates in the
    cover basis); the norm is the product of its Smith invariant factors,
    divided by the norm of the denominator, returned as a reduced monic
    fraction (numerator poly, denominator poly) wrapped in a base
    FractionalIdeal.  det(pushforward of S) is trivial in the chart basis,
    so no correction factor appears.
    """
    if not cover.base_is_principal_chart():
        raise UnsupportedBaseError("ideal norms need a k[t] base chart")
    if J.ring != cover.ring:
        raise CoverMismatchError("fractional ideal does not live on the cover")
    lattice = lattice_matrix(cover, J.numerator.gens)
    sf = smith_normal_form(lattice)
    if len(sf.invariants) != cover.degree:
        raise ValueError("degenerate lattice: numerator not of full rank")
    num = cover.base.one()
    for d in sf.invariants:
        num = num * d
    den = cover.element_norm(J.denominator)
    num, den = reduce_fraction(num, den)
    num = num.monic()
    return FractionalIdeal(cover.base, [num], den, _validated=True)


def lattice_matrix(cover, gens):
    """Columns: coordinates of g*b over all ideal generators g, basis b."""
    cols = []
    for g in gens:
        g = cover.ring.coerce(g)
        for b in cover.basis:
            cols.append(cover.coordinates(g * b))
    n = cover.degree
    return RingMatrix(cover.base,
                      [[cols[j][i] for j in range(len(cols))] for i in range(n)])


# ---------------------------------------------------------------------------
# bounded isomorphism test

ISOMORPHIC = "ISOMORPHIC"
NOT_ISOMORPHIC = "NOT_ISOMORPHIC"
UNDECIDED = "UNDECIDED"


@dataclass
class IsoResult:
    status: str
    witness: object = None  # regular ring element g with g*J2 = J1
    reason: str = ""

    def __bool__(self):
        return self.status == ISOMORPHIC


def ideal_iso_test(cover, J1, J2, rng=None, trials=24):
    """Search for a regular g in S with g*J2 = J1.

    Witnesses are integral ring elements (the chart avatar of adding an
    effective principal divisor).  Candidates come from the colon
    fractional ideal (J1 : J2): generators first, then bounded random
    k-combinations.  When no witness is found and the base is a k[t]
    chart, the lattice norms give a provable obstruction whenever their
    ratio is not integral (an integral witness always multiplies the norm
    by a polynomial); otherwise the test answers UNDECIDED.
    """
    ring = cover.ring
    if J1.ring != ring or J2.ring != ring:
        raise CoverMismatchError("fractional ideals do not live on the cover")
    colon = J1.colon(J2)
    den = colon.denominator
    candidates = []
    for u in list(colon.numerator.gens) + list(colon.numerator.basis()):
        u = Poly(ring, u.terms)
        if not u.is_zero():
            candidates.append(u)
    if rng is not None:
        gens = [Poly(ring, g.terms) for g in colon.numerator.gens]
        field = ring.field
        for _ in range(trials):
            combo = ring.zero()
            for g in gens:
                combo = combo + g.scale(field.random(rng))
            if not combo.is_zero():
                candidates.append(combo)
    den_ideal = Ideal(ring, [den])
    seen = []
    for u in candidates:
        if any(u == s for s in seen):
            continue
        seen.append(u)
        # integral witness g = u/den requires u in (den)
        if not den_ideal.contains(u):
            continue
        g = _divide_in_ring(ring, u, den)
        if g is None or not is_regular(ring, g):
            continue
        if _is_witness(ring, g, J1, J2):
            return IsoResult(ISOMORPHIC, witness=g)
    if cover.base_is_principal_chart():
        n1 = ideal_norm(cover, J1)
        n2 = ideal_norm(cover, J2)
        ratio_num = n1.numerator.gens[0] * n2.denominator if n1.numerator.gens \
            else cover.base.zero()
        ratio_den = n2.numerator.gens[0] * n1.denominator
        ratio_num, ratio_den = reduce_fraction(ratio_num, ratio_den)
        if ratio_den.total_degree() > 0:
            return IsoResult(
                NOT_ISOMORPHIC,
                reason=("norm ratio has denominator "
                        f"{ratio_den}; no integral multiplier exists"))
    return IsoResult(UNDECIDED, reason="no witness found within the search bound")


def _is_witness(ring, g, J1, J2):
    left = Ideal(ring, [J1.denominator * g * h for h in J2.numerator.gens])
    right = Ideal(ring, [J2.denominator * h for h in J1.numerator.gens])
    return left == right


def _divide_in_ring(ring, u, den):
    """Quotient u/den inside the (possibly quotient) ring, or None.

    Tries exact division of normal forms in the ambient polynomial ring
    first, then a bounded linear solve over the coefficient field.
    """
    from .groebner import _exact_poly_div, normal_form

    if den.is_unit():
        return u.scale(ring.field.inv(den.constant_value()))
    free = ring.free()
    uf = Poly(free, u.terms, reduce=False)
    df = Poly(free, den.terms, reduce=False)
    q = _exact_poly_div(uf, df)
    if q is not None:
        return Poly(ring, q.terms)
    # linear solve: h with h*den = u, h supported on normal-form monomials
    bound = max(u.total_degree() - den.total_degree(), 0) + _total_relation_degree(ring)
    monos = _normal_monomials(ring, bound)
    if not monos:
        return None
    field = ring.field
    cols = []
    support = {}
    for e in monos:
        prod = Poly(ring, {e: field.one}) * den
        cols.append(prod)
        for ee in prod.terms:
            support.setdefault(ee, len(support))
    for ee in u.terms:
        support.setdefault(ee, len(support))
    rows = [[field.zero] * len(monos) for _ in range(len(support))]
    for j, prod in enumerate(cols):
        for ee, c in prod.terms.items():
            rows[support[ee]][j] = c
    rhs = [field.zero] * len(support)
    for ee, c in u.terms.items():
        rhs[support[ee]] = c
    from .matrices import field_solve
    sol = field_solve(field, rows, rhs)
    if sol is None:
        return None
    terms = {e: c for e, c in zip(monos, sol) if c != field.zero}
    return Poly(ring, terms, reduce=False)


def _total_relation_degree(ring):
    deg = 2
    for t in ring.relations:
        deg = max(deg, max(sum(e) for e in t))
    return deg


def _normal_monomials(ring, bound):
    """Normal-form monomials of total degree <= bound."""
    basis = ring.relation_basis()
    leads = [g.leading_monomial() for g in basis]
    n = ring.nvars
    out = []
    stack = [(0,) * n]
    seen = {(0,) * n}
    while stack:
        e = stack.pop()
        out.append(e)
        for i in range(n):
            nxt = e[:i] + (e[i] + 1,) + e[i + 1:]
            if nxt in seen or sum(nxt) > bound:
                continue
            if any(all(a <= b for a, b in zip(le, nxt)) for le in leads):
                continue
            seen.add(nxt)
            stack.append(nxt)
    out.sort(key=ring.order.key)
    return out


# ---------------------------------------------------------------------------
# global numeric profile

@dataclass(frozen=True)
class NumericProfile:
    """Global integers feeding the closed-form degree formulas."""

    r: int
    g: int
    ell: int
    d: int = 0

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("rank must be at least 1")
        if self.g < 0:
            raise ValueError("genus must be nonnegative")
