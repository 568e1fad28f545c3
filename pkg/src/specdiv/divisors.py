"""Generalized divisors on a chart and their images along a cover.

A generalized divisor is stored as an effective ideal I of the chart ring
together with an optional principal negative part (every Cartier divisor
is principal on a small enough chart).  The direct image of an effective
divisor is the ideal of maximal minors of the presentation of the
pushed-forward quotient module over the base; principal parts push
forward through the element norm.
"""

from dataclasses import dataclass

from .errors import (CoverMismatchError, DegreeUndefinedError,
                     UnsupportedBaseError)
from .groebner import Ideal, artinian_dim, eliminate, ideal_colon, saturate
from .cover import FractionalIdeal, is_regular, lattice_matrix
from .polynomials import Poly, uni_divmod, uni_factor


class GeneralizedDivisor:
    """Effective ideal plus an optional principal negative part."""

    __slots__ = ("ring", "effective", "negative", "_dim", "_cartier")

    def __init__(self, ring, effective, negative=None, _checked=False):
        self.ring = ring
        if isinstance(effective, Ideal):
            ideal = effective
        else:
            ideal = Ideal(ring, effective)
        if not ideal.gens:
            ideal = Ideal(ring, [ring.one()])
        self.effective = ideal
        neg = None
        if negative is not None:
            neg = ring.coerce(negative)
            if neg.is_unit():
                neg = None
        self.negative = neg
        self._dim = None
        self._cartier = None
        if not _checked:
            self._validate()

    def _validate(self):
        if self.negative is not None and not is_regular(self.ring, self.negative):
            raise ValueError("negative part must be a regular element")
        dim = artinian_dim(self.effective)
        if dim is None:
            raise ValueError("effective part does not define a "
                             "dimension-zero subscheme")
        self._dim = dim

    @classmethod
    def zero(cls, ring):
        return cls(ring, [ring.one()])

    @classmethod
    def principal(cls, ring, f):
        f = ring.coerce(f)
        if not is_regular(ring, f):
            raise ValueError(f"{f} is not a regular element")
        return cls(ring, [f])

    @property
    def is_effective(self):
        return self.negative is None

    def effective_dim(self):
        if self._dim is None:
            self._dim = artinian_dim(self.effective)
        return self._dim

    def is_cartier(self):
        """I is invertible: I * (S : I) = S."""
        if self._cartier is None:
            num = FractionalIdeal(self.ring, self.effective, _validated=True)
            self._cartier = num.is_invertible()
        return self._cartier

    def fractional_ideal(self):
        """The divisor's fractional ideal I/(negative part)."""
        return FractionalIdeal(self.ring, self.effective,
                               self.negative, _validated=True)

    def __add__(self, other):
        if not isinstance(other, GeneralizedDivisor) or other.ring != self.ring:
            raise ValueError("divisors from different charts")
        eff = self.effective * other.effective
        if self.negative is None:
            neg = other.negative
        elif other.negative is None:
            neg = self.negative
        else:
            neg = self.negative * other.negative
        return GeneralizedDivisor(self.ring, eff, neg, _checked=True)

    def __eq__(self, other):
        if not isinstance(other, GeneralizedDivisor):
            return NotImplemented
        if other.ring != self.ring:
            return False
        if self.effective != other.effective:
            return False
        mine = Ideal(self.ring, [] if self.negative is None else [self.negative])
        theirs = Ideal(self.ring, [] if other.negative is None else [other.negative])
        if self.negative is None and other.negative is None:
            return True
        if self.negative is None or other.negative is None:
            # (f) can still be the unit ideal in disguise
            unit = Ideal(self.ring, [self.ring.one()])
            return (mine if other.negative is None else theirs) == unit
        return mine == theirs

    def __hash__(self):
        raise TypeError("generalized divisors are not hashable")

    def __repr__(self):
        gens = ", ".join(str(g) for g in self.effective.gens) or "1"
        if self.negative is None:
            return f"Divisor({gens})"
        return f"Divisor(({gens}) - ({self.negative}))"


def divisor_sum(d1, d2):
    return d1 + d2


# ---------------------------------------------------------------------------
# direct and inverse images

def direct_image(cover, divisor):
    """Pushforward along the cover, by 0-th Fitting ideals.

    Effective part: present the pushed-forward quotient S/I over the base
    by expanding ideal generators against the cover basis; the image ideal
    is generated by the maximal minors of that presentation matrix.  A
    principal negative part (f) pushes to (norm of f).
    """
    if divisor.ring != cover.ring:
        raise CoverMismatchError("divisor does not live on the cover chart")
    n = cover.degree
    gens = divisor.effective.gens
    if not gens or divisor.effective.is_unit_ideal():
        fitt = Ideal(cover.base, [cover.base.one()])
    else:
        presentation = lattice_matrix(cover, gens)
        minors = presentation.minors(n)
        fitt = Ideal(cover.base, [m for m in minors if not m.is_zero()])
        fitt = fitt.groebner()
    neg = None
    if divisor.negative is not None:
        neg = cover.element_norm(divisor.negative)
    return GeneralizedDivisor(cover.base, fitt, neg)


def inverse_image(cover, divisor):
    """Pullback along the cover: extension of the defining ideal."""
    if divisor.ring != cover.base:
        raise CoverMismatchError("divisor does not live on the base chart")
    eff = cover.extend_ideal(divisor.effective)
    neg = None
    if divisor.negative is not None:
        neg = cover.to_cover(divisor.negative)
    return GeneralizedDivisor(cover.ring, eff, neg)


# ---------------------------------------------------------------------------
# degrees

def chart_degree(divisor):
    """Total degree on the chart: k-dimension of the effective quotient
    minus the k-dimension of the principal negative quotient."""
    dim = divisor.effective_dim()
    if dim is None:
        raise DegreeUndefinedError("effective part is not Artinian")
    total = dim
    if divisor.negative is not None:
        neg_dim = artinian_dim(Ideal(divisor.ring, [divisor.negative]))
        if neg_dim is None:
            raise DegreeUndefinedError("negative part is not Artinian")
        total -= neg_dim
    return total


def degree_at_point(divisor, point):
    """Degree at one maximal ideal: local length times residue degree.

    Computed as dim_k of ring/(I + m^N) at the saturation-stable exponent
    N, which isolates the local component without localization machinery.
    """
    if not divisor.is_effective:
        raise ValueError("per-point degrees are defined for effective divisors")
    if not isinstance(point, Ideal) or point.ring != divisor.ring:
        raise ValueError("point must be an ideal of the divisor's chart")
    if not is_maximal_ideal(point):
        raise ValueError("point is not a maximal ideal")
    _, exponent = saturate(divisor.effective, point)
    if exponent == 0:
        return 0
    truncated = divisor.effective + point ** exponent
    dim = artinian_dim(truncated)
    if dim is None:
        raise DegreeUndefinedError("truncation is not Artinian")
    return dim


def is_maximal_ideal(m):
    """Maximality via the finite quotient: m is maximal iff ring/m is a
    field.  Certified through the minimal polynomial of a primitive
    element when one is found; quotients with visible zero divisors are
    rejected.
    """
    dim = artinian_dim(m)
    if dim is None or dim == 0:
        return False
    if dim == 1:
        return True
    ring = m.ring
    field = ring.field
    basis_exps = _standard_monomials(m)
    # quotient multiplication by each variable; a field has no nilpotents,
    # so x^dim distinct powers of a primitive element span
    from .matrices import field_rank
    for probe in _probe_elements(ring, basis_exps):
        powers = [ring.one()]
        for _ in range(dim):
            powers.append(m.normal_form(powers[-1] * probe))
        rows = []
        for pw in powers[:dim]:
            rows.append(_coeff_vector(pw, basis_exps, field))
        if field_rank(field, rows) == dim:
            # primitive element found: field iff its min poly is irreducible
            return _min_poly_irreducible(m, probe, basis_exps, dim)
    # no primitive element found; fall back to a zero-divisor probe
    for probe in _probe_elements(ring, basis_exps):
        nf = m.normal_form(probe)
        if nf.is_zero():
            continue
        col = ideal_colon(m, Ideal(ring, [probe]))
        if col != m and not col.is_unit_ideal():
            return False
    return True


def _standard_monomials(m):
    leads = [g.leading_monomial() for g in m.basis()]
    ring = m.ring
    n = ring.free().nvars
    out = []
    stack = [(0,) * n]
    seen = {(0,) * n}
    while stack:
        e = stack.pop()
        out.append(e)
        for i in range(n):
            nxt = e[:i] + (e[i] + 1,) + e[i + 1:]
            if nxt in seen:
                continue
            if any(all(a <= b for a, b in zip(le, nxt)) for le in leads):
                continue
            seen.add(nxt)
            stack.append(nxt)
    out.sort(key=ring.order.key)
    return out


def _coeff_vector(poly, basis_exps, field):
    index = {e: i for i, e in enumerate(basis_exps)}
    vec = [field.zero] * len(basis_exps)
    for e, c in poly.terms.items():
        vec[index[e]] = c
    return vec


def _probe_elements(ring, basis_exps):
    for e in basis_exps:
        if sum(e) > 0:
            yield Poly(ring, {e: ring.field.one})
    # a few fixed combinations, deterministic
    nontrivial = [e for e in basis_exps if sum(e) > 0]
    if len(nontrivial) >= 2:
        f = ring.field
        yield Poly(ring, {nontrivial[0]: f.one, nontrivial[1]: f.one})


def _min_poly_irreducible(m, probe, basis_exps, dim):
    ring = m.ring
    field = ring.field
    from .matrices import field_solve
    from .polynomials import Ring, uni_from_coeffs, uni_irreducible
    from .fields import PrimeField
    powers = [ring.one()]
    for _ in range(dim):
        powers.append(m.normal_form(powers[-1] * probe))
    rows = [_coeff_vector(p, basis_exps, field) for p in powers[:dim]]
    target = _coeff_vector(powers[dim], basis_exps, field)
    # probe^dim = sum c_i probe^i  ->  min poly x^dim - sum c_i x^i
    cols = [list(r) for r in zip(*rows)]
    sol = field_solve(field, cols, target)
    if sol is None:
        return False
    aux = Ring(field, ["_m"])
    coeffs = [field.neg(c) for c in sol] + [field.one]
    minpoly = uni_from_coeffs(aux, coeffs)
    if isinstance(field, PrimeField):
        return uni_irreducible(minpoly)
    # over the rationals: degree <= 2 decided by discriminant
    if dim == 1:
        return True
    if dim == 2:
        c0, c1 = coeffs[0], coeffs[1]
        disc = c1 * c1 - 4 * c0
        from fractions import Fraction
        root = _fraction_sqrt(Fraction(disc))
        return root is None
    raise UnsupportedBaseError(
        "maximality over the rationals decided only up to quadratic points")


def _fraction_sqrt(q):
    if q < 0:
        return None
    num, den = q.numerator, q.denominator
    rn = _isqrt_exact(num)
    rd = _isqrt_exact(den)
    if rn is None or rd is None:
        return None
    from fractions import Fraction
    return Fraction(rn, rd)


def _isqrt_exact(n):
    from math import isqrt
    r = isqrt(n)
    return r if r * r == n else None


# ---------------------------------------------------------------------------
# support enumeration and preimage construction

def support_points(divisor, cover=None, max_residue_degree=2):
    """Maximal ideals in the support of an effective divisor.

    Base side (one-variable charts): factor the eliminated generator.
    Cover side: enumerate fiber maximal ideals of bounded residue degree
    over each base factor.  Raises when part of the support cannot be
    accounted for at the bound.
    """
    import random
    rng = random.Random(20210914)
    ring = divisor.ring
    if not divisor.is_effective:
        raise ValueError("support enumeration expects an effective divisor")
    if cover is None:
        if ring.is_quotient or ring.nvars != 1:
            raise UnsupportedBaseError("direct support enumeration needs k[t]")
        gen = divisor.effective.basis()
        if len(gen) != 1:
            raise ValueError("nonprincipal ideal on a principal-ideal chart?")
        points = []
        base_poly = Poly(ring, gen[0].terms, reduce=False)
        if base_poly.is_unit():
            return []
        for factor, _ in uni_factor(base_poly, rng):
            points.append(Ideal(ring, [factor]))
        return points
    # cover side
    if cover.ring != ring:
        raise CoverMismatchError("divisor does not live on the cover chart")
    if not cover.base_is_principal_chart():
        raise UnsupportedBaseError("fiber probing needs a k[t] base chart")
    downstairs = eliminate(divisor.effective,
                           [n for n in ring.names if n not in cover.base.names])
    base_gen = None
    for g in downstairs.basis():
        if not g.is_zero():
            base_gen = g
            break
    if base_gen is None or base_gen.is_unit():
        raise ValueError("divisor support does not project to points")
    tname = cover.base.names[0]
    base_ring = cover.base
    base_poly = Poly(base_ring, {(e[downstairs.ring._index[tname]],): c
                                 for e, c in base_gen.terms.items()})
    points = []
    total = chart_degree(divisor)
    accounted = 0
    for factor, _ in uni_factor(base_poly, rng):
        for m in _fiber_maximal_ideals(cover, factor, max_residue_degree):
            d = degree_at_point(divisor, m)
            if d > 0:
                points.append(m)
                accounted += d
    if accounted != total:
        raise UnsupportedBaseError(
            f"support enumeration incomplete: found degree {accounted} "
            f"of {total} at residue-degree bound {max_residue_degree}")
    return points


def _fiber_maximal_ideals(cover, base_factor, max_residue_degree=2):
    """Maximal ideals of a monic cover over a base point (p(t)).

    Rational base points: substitute t -> c into the defining polynomial
    and factor; each irreducible factor q gives the maximal ideal
    (t - c, q(x)).  Base points of higher degree: bounded search for
    fiber roots x = rho(t) with deg rho < deg p (no extension-field
    arithmetic); fibers without such a root at the bound yield nothing.
    """
    import random
    rng = random.Random(78491)
    ring = cover.ring
    base = cover.base
    field = ring.field
    if cover.monic_data is None:
        raise UnsupportedBaseError("fiber enumeration implemented for "
                                   "monic covers")
    xname, coeffs = cover.monic_data
    xvar = ring.var(xname)
    p_up = cover.to_cover(base_factor)
    deg_p = base_factor.total_degree()
    tname = base.names[0]
    found = []
    if deg_p == 1:
        # root c of the monic linear factor t + a is -a
        from .polynomials import uni_coeffs, uni_from_coeffs
        fc = uni_coeffs(base_factor)
        c = field.neg(field.div(fc[0], fc[1]))
        spec = _specialize_cover_poly(cover, c)
        try:
            factors = uni_factor(spec, rng)
        except ValueError:
            return []
        for q, _ in factors:
            if q.total_degree() > max_residue_degree:
                continue
            q_up = _univariate_to_cover(cover, q, xname)
            found.append(Ideal(ring, [p_up, q_up]).groebner())
        return found
    # non-rational base point: search x - rho(t), rho of degree < deg p
    from .fields import PrimeField
    if not isinstance(field, PrimeField) or deg_p > 3:
        return []
    from itertools import product
    tv = base.var(tname)
    for rho_coeffs in product(range(field.p), repeat=deg_p):
        rho = base.zero()
        for i, cc in enumerate(rho_coeffs):
            rho = rho + tv ** i * base.const(cc)
        # rho is a fiber root iff P(rho) = 0 mod p(t)
        value = _cover_poly_at(cover, rho)
        _, rem = uni_divmod(value, base_factor)
        if rem.is_zero():
            m = Ideal(ring, [p_up, xvar - cover.to_cover(rho)]).groebner()
            if all(m != other for other in found):
                found.append(m)
    return found


def _specialize_cover_poly(cover, c):
    """P(x, t=c) as a univariate polynomial in a one-variable ring."""
    from .polynomials import Ring, uni_from_coeffs, uni_eval
    base = cover.base
    xname, coeffs = cover.monic_data
    uni = Ring(base.field, [xname])
    out = [base.field.zero] * (len(coeffs) + 1)
    out[len(coeffs)] = base.field.one
    for i, a in enumerate(coeffs):
        out[len(coeffs) - 1 - i] = uni_eval(a, c)
    return uni_from_coeffs(uni, out)


def _univariate_to_cover(cover, q, xname):
    """Reinterpret q(x) in the cover ring."""
    from .polynomials import uni_coeffs
    ring = cover.ring
    xvar = ring.var(xname)
    out = ring.zero()
    for i, c in enumerate(uni_coeffs(q)):
        out = out + (xvar ** i).scale(c)
    return out


def _cover_poly_at(cover, rho):
    """P(rho(t), t) in the base ring, for a monic cover."""
    base = cover.base
    _, coeffs = cover.monic_data
    r = len(coeffs)
    out = rho ** r
    for i, a in enumerate(coeffs):
        out = out + a * rho ** (r - 1 - i)
    return out


@dataclass
class PreimageResult:
    divisor: object
    image: object
    verified: bool
    transcript: tuple


def find_preimage_divisor(cover, target, rng):
    """Construct an effective divisor upstairs pushing to the target.

    Points of the (principal) target pick fiber points; powers of the
    fiber maximal ideals match local lengths; the pushforward is then
    verified.  Points whose pushforward degree overshoots (singular fiber
    choices) are retried with other fiber points; failure is explicit.
    """
    base = cover.base
    if not cover.base_is_principal_chart():
        raise UnsupportedBaseError("preimage construction needs a k[t] base")
    if target.ring != base:
        raise CoverMismatchError("target divisor does not live on the base")
    if not target.is_effective:
        raise UnsupportedBaseError("preimage construction expects an "
                                   "effective target")
    gen = target.effective.basis()
    transcript = []
    if not gen or (len(gen) == 1 and gen[0].is_unit()):
        div = GeneralizedDivisor.zero(cover.ring)
        image = direct_image(cover, div)
        return PreimageResult(div, image, image == target, ("trivial target",))
    base_poly = Poly(base, gen[0].terms, reduce=False)
    factors = uni_factor(base_poly, rng)
    pieces = []
    for factor, mult in factors:
        fiber = _fiber_maximal_ideals(cover, factor)
        if not fiber:
            raise UnsupportedBaseError(
                f"no fiber point found over ({factor}); "
                "no rational point in the fiber")
        chosen = None
        for m in fiber:
            candidate = GeneralizedDivisor(cover.ring, m ** mult)
            pushed = direct_image(cover, candidate)
            want = GeneralizedDivisor(base, Ideal(base, [factor ** mult]))
            if pushed == want:
                chosen = candidate
                transcript.append(
                    f"({factor})^{mult}: fiber point "
                    f"({', '.join(str(g) for g in m.gens)}) verified")
                break
            transcript.append(
                f"({factor})^{mult}: fiber point "
                f"({', '.join(str(g) for g in m.gens)}) rejected "
                f"(pushforward mismatch)")
        if chosen is None:
            raise UnsupportedBaseError(
                f"no fiber point over ({factor}) pushes to the right "
                "local degree")
        pieces.append(chosen)
    total = GeneralizedDivisor.zero(cover.ring)
    for piece in pieces:
        total = total + piece
    image = direct_image(cover, total)
    verified = image == target
    transcript.append(f"pushforward equals target: {verified}")
    return PreimageResult(total, image, verified, tuple(transcript))
