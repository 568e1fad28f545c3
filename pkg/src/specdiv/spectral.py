"""Spectral correspondence on a chart and structure-group checkers.

Multiplication by the cover generator turns a rank-1 module over the
spectral ring S = R[x]/(P) into an r x r matrix over R with
characteristic polynomial P, and a matrix with characteristic polynomial
P into the cokernel module of (matrix - x).  The four-term sequence

    0 -> M -> S (x) M -> S (x) M -> M -> 0

(with the middle map "multiply inside minus multiply outside") is
verified symbolically on the compositions and numerically, by rank
counts, at reduced specializations of the base coordinate.

The structure-group layer checks Prym-type norm triviality, the sign
involution and its duality pairing, the trace translation for even rank,
and the closed-form degree and Euler-characteristic formulas.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import (CharacteristicError, CoverMismatchError, DimensionError,
                     InvolutionError, RankError, UnsupportedBaseError)
from .cover import (FractionalIdeal, ideal_iso_test, ideal_norm,
                    lattice_matrix, ISOMORPHIC, NOT_ISOMORPHIC)
from .groebner import _exact_poly_div
from .matrices import (RingMatrix, adjugate, field_rank, field_nullspace,
                       smith_normal_form)
from .polynomials import Poly, uni_eval, uni_gcd, uni_derivative


# ---------------------------------------------------------------------------
# Higgs matrices

class HiggsChart:
    """A square matrix over the base chart ring, twist trivialized."""

    __slots__ = ("ring", "mat", "n")

    def __init__(self, ring, rows):
        if isinstance(rows, RingMatrix):
            mat = rows
        else:
            mat = RingMatrix(ring, rows)
        if mat.nrows != mat.ncols:
            raise DimensionError("Higgs matrix must be square")
        self.ring = ring
        self.mat = mat
        self.n = mat.nrows

    def __eq__(self, other):
        return (isinstance(other, HiggsChart) and other.ring == self.ring
                and other.mat == self.mat)

    def __hash__(self):
        return hash(self.mat)

    def __repr__(self):
        return f"HiggsChart({self.mat!r})"


def char_coeffs(phi):
    """(a_1, ..., a_n) with char(phi) = x^n + a_1 x^(n-1) + ... + a_n."""
    ring = phi.ring
    name = ring.fresh_name("x")
    cp = phi.mat.charpoly(name)
    ext = cp.ring
    n = phi.n
    out = []
    for i in range(1, n + 1):
        ci = cp.coefficient_of(name, n - i)
        terms = {}
        for e, c in ci.terms.items():
            reduced = tuple(v for j, v in enumerate(e) if ext.names[j] != name)
            terms[reduced] = c
        out.append(Poly(ring, terms))
    return tuple(out)


def companion_higgs(cover):
    """Multiplication by the cover generator in the cover's own basis."""
    x = cover.ring.var(cover.monic_data[0])
    return HiggsChart(cover.base, cover.mult_matrix(x))


# ---------------------------------------------------------------------------
# spectral modules

FRACTIONAL = "fractional"
PRESENTATION = "presentation"


class SpectralModule:
    """Rank-1 module over the spectral ring, one of two shapes.

    FRACTIONAL: a fractional ideal of S.  PRESENTATION: the cokernel of a
    square matrix over S (columns are relations among the free
    generators).  ``twist`` records how many powers of the twisting line
    bundle the representative carries; all twists are trivial on a single
    chart but the exponent is kept for bookkeeping.
    """

    __slots__ = ("cover", "kind", "fractional", "presentation", "twist")

    def __init__(self, cover, fractional=None, presentation=None, twist=0):
        self.cover = cover
        self.twist = twist
        if (fractional is None) == (presentation is None):
            raise ValueError("exactly one of fractional/presentation required")
        if fractional is not None:
            if fractional.ring != cover.ring:
                raise CoverMismatchError("fractional ideal on the wrong ring")
            self.kind = FRACTIONAL
            self.fractional = fractional
            self.presentation = None
        else:
            if presentation.ring != cover.ring:
                raise CoverMismatchError("presentation over the wrong ring")
            self.kind = PRESENTATION
            self.fractional = None
            self.presentation = presentation

    @classmethod
    def structure_sheaf(cls, cover):
        return cls(cover, fractional=FractionalIdeal(cover.ring, ["1"],
                                                     _validated=True))

    @classmethod
    def from_gens(cls, cover, gens, denominator=None):
        return cls(cover,
                   fractional=FractionalIdeal(cover.ring, gens, denominator))

    def __repr__(self):
        if self.kind == FRACTIONAL:
            return f"SpectralModule({self.fractional!r}, twist={self.twist})"
        return f"SpectralModule(cokernel {self.presentation!r}, twist={self.twist})"


@dataclass
class ModuleLattice:
    """An R-basis of the pushforward of a spectral module.

    ``basis_matrix`` columns give the basis in the cover coordinates when
    the module came as a fractional ideal (None for abstract cokernels);
    ``x_action`` is multiplication by the cover generator in that basis.
    """

    cover: object
    x_action: RingMatrix
    basis_matrix: object = None


def _solve_right(ring, B, C):
    """X with B·X = C over a free polynomial ring, by adjugate + exact division."""
    det = B.det()
    if det.is_zero():
        return None
    adj = adjugate(B)
    raw = adj * C
    rows = []
    for row in raw.rows:
        out = []
        for entry in row:
            q = _exact_poly_div(entry, det)
            if q is None:
                return None
            out.append(q)
        rows.append(out)
    return RingMatrix(ring, rows)


def lattice_of(module):
    """R-basis and x-action of a spectral module over a k[t] chart."""
    cover = module.cover
    if not cover.base_is_principal_chart():
        raise UnsupportedBaseError("module lattices need a k[t] base chart")
    if cover.monic_data is None:
        raise UnsupportedBaseError("module lattices need a monic cover")
    R = cover.base
    n = cover.degree
    if module.kind == FRACTIONAL:
        A = lattice_matrix(cover, module.fractional.numerator.gens)
        sf = smith_normal_form(A)
        if len(sf.invariants) != n:
            raise RankError("module is not of full rank over the base")
        diag = RingMatrix(R, [[sf.invariants[i] if i == j else R.zero()
                               for j in range(n)] for i in range(n)])
        B = sf.Uinv * diag
        X = cover.mult_matrix(cover.ring.var(cover.monic_data[0]))
        phi = _solve_right(R, B, X * B)
        if phi is None:
            raise RankError("basis change failed; degenerate lattice")
        return ModuleLattice(cover, phi, basis_matrix=B)
    # presentation form: free part of the cokernel over R
    psi = module.presentation
    m = psi.nrows
    psi_R = _expand_over_base(cover, psi)
    sf = smith_normal_form(psi_R)
    nonunit = [d for d in sf.invariants if d.total_degree() > 0]
    if nonunit:
        raise RankError("cokernel has base-ring torsion; degenerate module")
    rank = len(sf.invariants)
    free_positions = list(range(rank, m * n))
    if len(free_positions) != n:
        raise RankError("cokernel is not of rank one over the spectral ring")
    X_R = _expand_over_base(cover, _x_identity(cover, m))
    conj = sf.U * X_R * sf.Uinv
    rows = [[conj.rows[i][j] for j in free_positions] for i in free_positions]
    return ModuleLattice(cover, RingMatrix(R, rows))


def _x_identity(cover, m):
    x = cover.ring.var(cover.monic_data[0])
    z = cover.ring.zero()
    return RingMatrix(cover.ring, [[x if i == j else z for j in range(m)]
                                   for i in range(m)])


def _expand_over_base(cover, mat):
    """An S-matrix as a base-ring matrix on basis (cover basis) x (columns)."""
    n = cover.degree
    R = cover.base
    blocks = [[cover.mult_matrix(mat.rows[i][j]) for j in range(mat.ncols)]
              for i in range(mat.nrows)]
    rows = []
    for i in range(mat.nrows):
        for a in range(n):
            row = []
            for j in range(mat.ncols):
                row.extend(blocks[i][j].rows[a])
            rows.append(row)
    return RingMatrix(R, rows)


def module_to_higgs(module):
    """Matrix of multiplication by the cover generator on the module.

    The characteristic coefficients of the result must match the cover;
    a mismatch marks a degenerate input and raises.
    """
    lattice = lattice_of(module)
    phi = HiggsChart(module.cover.base, lattice.x_action)
    expected = tuple(module.cover.coefficients())
    if char_coeffs(phi) != expected:
        raise RankError("multiplication matrix has the wrong characteristic")
    return phi


def higgs_to_module(cover, phi):
    """Cokernel presentation of (phi - x) over the spectral ring.

    The result represents the spectral module twisted by one power of the
    trivialized line bundle; the exponent is recorded on the module.
    """
    if phi.ring != cover.base:
        raise CoverMismatchError("Higgs matrix does not live on the base chart")
    if tuple(char_coeffs(phi)) != tuple(cover.coefficients()):
        raise CoverMismatchError(
            "characteristic coefficients do not match the cover")
    S = cover.ring
    x = S.var(cover.monic_data[0])
    n = phi.n
    lifted = phi.mat.map(cover.to_cover, ring=S)
    pres = lifted - _x_identity(cover, n)
    return SpectralModule(cover, presentation=pres, twist=1)


def to_fractional(module):
    """A fractional-ideal representative of a presentation-form module.

    Entries of one adjugate column of (x·I - phi) span the eigenvector
    line; the ideal they generate realizes the module up to twist.  The
    realization is verified by comparing characteristic coefficients.
    """
    if module.kind == FRACTIONAL:
        return module
    cover = module.cover
    S = cover.ring
    pres = module.presentation
    adj = adjugate(-pres)  # adjugate of (x - phi) lifted to S
    for j in range(adj.ncols):
        gens = [adj.rows[i][j] for i in range(adj.nrows)]
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            continue
        try:
            frac = FractionalIdeal(S, gens)
        except ValueError:
            continue
        candidate = SpectralModule(cover, fractional=frac, twist=module.twist)
        try:
            module_to_higgs(candidate)
        except (RankError, UnsupportedBaseError):
            continue
        return candidate
    raise RankError("no nondegenerate eigenvector column found")


# ---------------------------------------------------------------------------
# the four-term sequence

def _a_with_unit(cover):
    """(a_0=1, a_1, ..., a_r) as base-ring elements."""
    return (cover.base.one(),) + tuple(cover.coefficients())


def q_map_matrix(lattice):
    """Matrix over R of the kernel embedding M -> S (x) M.

    Row block i (coefficient of x^i on the left tensor factor) is
    sum_{j=0}^{r-1-i} x_action^(r-1-i-j) * a_j, with a_0 = 1.
    """
    cover = lattice.cover
    r = cover.degree
    R = cover.base
    a = _a_with_unit(cover)
    phi = lattice.x_action
    powers = [RingMatrix.identity(R, r)]
    for _ in range(r - 1):
        powers.append(powers[-1] * phi)
    blocks = []
    for i in range(r):
        total = RingMatrix.zero(R, r, r)
        for j in range(r - i):
            total = total + powers[r - 1 - i - j] * a[j]
        blocks.append(total)
    rows = []
    for block in blocks:
        rows.extend(block.rows)
    return RingMatrix(R, rows)


def psi_matrix(lattice):
    """Matrix over R of (multiply inside) - (multiply outside) on S (x) M."""
    cover = lattice.cover
    r = cover.degree
    R = cover.base
    a = _a_with_unit(cover)
    phi = lattice.x_action
    zero = RingMatrix.zero(R, r, r)
    ident = RingMatrix.identity(R, r)
    blocks = [[zero for _ in range(r)] for _ in range(r)]
    for i in range(r):
        blocks[i][i] = phi
    # left multiplication by x: component i receives v_{i-1}, and the top
    # reduction feeds -a_{r-i} * v_{r-1}
    for i in range(1, r):
        blocks[i][i - 1] = blocks[i][i - 1] - ident
    for i in range(r):
        blocks[i][r - 1] = blocks[i][r - 1] + ident * a[r - i]
    rows = []
    for i in range(r):
        for s in range(r):
            row = []
            for j in range(r):
                row.extend(blocks[i][j].rows[s])
            rows.append(row)
    return RingMatrix(R, rows)


def ev_map_matrix(lattice):
    """Matrix over R of evaluation S (x) M -> M: sum of x^i * v_i."""
    cover = lattice.cover
    r = cover.degree
    R = cover.base
    phi = lattice.x_action
    powers = [RingMatrix.identity(R, r)]
    for _ in range(r - 1):
        powers.append(powers[-1] * phi)
    rows = []
    for s in range(r):
        row = []
        for i in range(r):
            row.extend(powers[i].rows[s])
        rows.append(row)
    return RingMatrix(R, rows)


def bnr_q_map(module, element):
    """Image of a module element under the kernel embedding.

    Returns the list of tensor components (c_0, ..., c_(r-1)): component
    i multiplies x^i on the left factor and is an element of the module.
    """
    cover = module.cover
    r = cover.degree
    S = cover.ring
    a = _a_with_unit(cover)
    element = S.coerce(element)
    x = S.var(cover.monic_data[0])
    comps = []
    for i in range(r):
        acc = S.zero()
        for j in range(r - i):
            acc = acc + x ** (r - 1 - i - j) * cover.to_cover(a[j])
        comps.append(acc * element)
    return comps


def psi_apply(module, comps):
    """Apply (inside - outside multiplication) to tensor components."""
    cover = module.cover
    r = cover.degree
    S = cover.ring
    a = _a_with_unit(cover)
    x = S.var(cover.monic_data[0])
    out = []
    for i in range(r):
        term = x * comps[i]
        if i >= 1:
            term = term - comps[i - 1]
        term = term + cover.to_cover(a[r - i]) * comps[r - 1]
        out.append(term)
    return out


def ev_apply(module, comps):
    cover = module.cover
    x = cover.ring.var(cover.monic_data[0])
    acc = cover.ring.zero()
    for i, c in enumerate(comps):
        acc = acc + x ** i * c
    return acc


@dataclass
class BnrReport:
    symbolic_psi_q: bool
    symbolic_ev_psi: bool
    specializations: list
    status: str  # PASS | FAIL | INCONCLUSIVE

    @property
    def passed(self):
        return self.status == "PASS"


def smooth_points(cover, limit=10):
    """Base points c where the specialized cover polynomial is squarefree."""
    from .fields import PrimeField
    field = cover.base.field
    if not isinstance(field, PrimeField):
        candidates = [Fraction(v) for v in range(-limit, limit + 1)]
    else:
        candidates = list(field.elements())
    from .divisors import _specialize_cover_poly
    out = []
    for c in candidates:
        spec = _specialize_cover_poly(cover, c)
        der = uni_derivative(spec)
        if uni_gcd(spec, der).total_degree() == 0:
            out.append(c)
    return out


def verify_bnr_sequence(module, rng, specializations=20):
    """Check the four-term sequence for one module.

    Compositions vanish symbolically (matrix products over R are zero);
    injectivity of the kernel embedding, surjectivity of evaluation and
    exactness in the middle are verified by rank counts at random reduced
    specializations of the base coordinate (drawn with replacement; small
    prime fields have few smooth points).
    """
    cover = module.cover
    lattice = lattice_of(module)
    r = cover.degree
    Q = q_map_matrix(lattice)
    Psi = psi_matrix(lattice)
    Ev = ev_map_matrix(lattice)
    sym_pq = (Psi * Q).is_zero()
    sym_ep = (Ev * Psi).is_zero()
    good_points = smooth_points(cover)
    if not good_points:
        return BnrReport(sym_pq, sym_ep, [], "INCONCLUSIVE")
    field = cover.base.field
    tname = cover.base.names[0]
    results = []
    ok_all = True
    for _ in range(specializations):
        c = good_points[rng.randrange(len(good_points))]
        q_rows = _specialize_matrix(Q, c)
        psi_rows = _specialize_matrix(Psi, c)
        ev_rows = _specialize_matrix(Ev, c)
        rank_q = field_rank(field, q_rows)
        rank_psi = field_rank(field, psi_rows)
        rank_ev = field_rank(field, ev_rows)
        ok = (rank_q == r and rank_psi == r * r - r and rank_ev == r)
        results.append({"point": c, "rank_q": rank_q, "rank_psi": rank_psi,
                        "rank_ev": rank_ev, "ok": ok})
        ok_all = ok_all and ok
    results.sort(key=lambda rec: str(rec["point"]))
    status = "PASS" if (sym_pq and sym_ep and ok_all) else "FAIL"
    return BnrReport(sym_pq, sym_ep, results, status)


def _specialize_matrix(mat, c):
    field = mat.ring.field
    return [[uni_eval(entry, c) for entry in row] for row in mat.rows]


# ---------------------------------------------------------------------------
# structure-group checkers

IN_FIBER = "IN_FIBER"
NOT_IN_FIBER = "NOT_IN_FIBER"
UNDECIDED = "UNDECIDED"
HOLDS = "HOLDS"
FAILS = "FAILS"


@dataclass
class CheckResult:
    status: str
    witness: object = None
    detail: str = ""

    def __bool__(self):
        return self.status in (IN_FIBER, HOLDS, ISOMORPHIC)


def norm_fiber_check(module):
    """Does the module lie over the trivial bundle under the lattice norm?

    On a chart with a free pushforward the norm target is trivial, so
    membership means the monic-normalized norm is the unit fraction.
    """
    module = to_fractional(module)
    nm = ideal_norm(module.cover, module.fractional)
    num = nm.numerator.gens[0]
    den = nm.denominator
    if num.is_unit() and den.is_unit():
        return CheckResult(IN_FIBER, witness=num,
                           detail="norm is the unit ideal")
    return CheckResult(NOT_IN_FIBER,
                       detail=f"norm is ({num})/({den})")


def sp_parity_check(coeffs):
    """True iff the monic polynomial with these coefficients is even.

    coeffs = (a_1, ..., a_n); evenness of x^n + a_1 x^(n-1) + ... + a_n
    is exactly the vanishing of every odd-indexed coefficient on an
    even-degree cover (odd-degree polynomials are never even).
    """
    n = len(coeffs)
    if n % 2 == 1:
        return False
    for i, a in enumerate(coeffs, start=1):
        zero = a.is_zero() if isinstance(a, Poly) else (a == 0)
        if i % 2 == 1 and not zero:
            return False
    return True


def sigma_pullback(module):
    """Pullback along the sign involution of the cover generator."""
    module = to_fractional(module)
    cover = module.cover
    if cover.monic_data is None:
        raise InvolutionError("sign involution needs a monic cover")
    if not sp_parity_check(cover.coefficients()):
        raise InvolutionError("cover is not invariant under x -> -x")
    xname = cover.monic_data[0]
    S = cover.ring
    minus_x = -S.var(xname)
    gens = [g.subs({xname: minus_x}) for g in module.fractional.numerator.gens]
    den = module.fractional.denominator.subs({xname: minus_x})
    frac = FractionalIdeal(S, gens, den, _validated=True)
    return SpectralModule(cover, fractional=frac, twist=module.twist)


def sp_duality_check(module, rng=None):
    """Compare the dual module with the involution pullback.

    The duality pairing asks for an isomorphism between the dual
    M^v = (S : M) and sigma^*M twisted by 1 - 2r powers of the
    trivialized bundle (invisible on the chart, recorded in the detail).
    FAILS is returned only on a provable norm obstruction; a fruitless
    search stays UNDECIDED.
    """
    module = to_fractional(module)
    cover = module.cover
    r2 = cover.degree
    dual = module.fractional.inverse()
    sigma = sigma_pullback(module)
    iso = ideal_iso_test(cover, sigma.fractional, dual, rng=rng)
    twist_note = f"chart-trivial twist exponent {1 - r2} recorded"
    if iso.status == ISOMORPHIC:
        return CheckResult(HOLDS, witness=iso.witness, detail=twist_note)
    if iso.status == NOT_ISOMORPHIC:
        return CheckResult(FAILS, detail=f"{iso.reason}; {twist_note}")
    return CheckResult(UNDECIDED, detail=f"{iso.reason}; {twist_note}")


def gsp_translate(phi):
    """Shift a Higgs matrix to trace zero: (phi - mu, mu), mu = tr/(2r).

    Requires even size and a characteristic not dividing it; the shifted
    characteristic-polynomial identity holds by construction and is
    re-verified symbolically by the caller-facing tests.
    """
    n = phi.n
    if n % 2 == 1:
        raise DimensionError("trace translation needs even rank")
    field = phi.ring.field
    if getattr(field, "characteristic", 0) and n % field.characteristic == 0:
        raise CharacteristicError(
            f"characteristic {field.characteristic} divides the rank {n}")
    trace = phi.mat.trace()
    mu = trace.scale(Fraction(1, n) if field.characteristic == 0
                     else field.inv(field.coerce(n)))
    shifted = phi.mat - RingMatrix.identity(phi.ring, n) * mu
    return HiggsChart(phi.ring, shifted), mu


def shifted_charpoly_identity(phi, phi_shifted, mu):
    """chi_phi(x + mu) == chi_(phi') (x), checked symbolically."""
    ring = phi.ring
    name = ring.fresh_name("x")
    left = phi.mat.charpoly(name)
    ext = left.ring
    x = ext.var(name)
    mu_l = ring.lift(mu, ext)
    left_shifted = left.subs({name: x + mu_l})
    right = phi_shifted.mat.charpoly(name)
    return left_shifted == right


# ---------------------------------------------------------------------------
# numeric formulas

GROUPS = ("GL", "SL", "Sp", "GSp")


def degree_formulas(profile, group="GL"):
    """Spectral degree shift, Euler characteristic, canonical degree.

    For GL/SL the cover has degree r; for Sp/GSp it has degree 2r with
    only even defining coefficients.  Returned integers:

    * d_prime: degree of the spectral module matching degree-d data;
    * chi: Euler characteristic of the spectral curve;
    * omega_degree: degree of its canonical sheaf (chi = -omega/2).
    """
    if group not in GROUPS:
        raise ValueError(f"unknown group tag {group!r}")
    r, g, ell, d = profile.r, profile.g, profile.ell, profile.d
    if group in ("GL", "SL"):
        n = r
        if group == "SL":
            d = 0
        d_prime = d + r * (r - 1) * ell // 2
    else:
        n = 2 * r
        if group == "Sp":
            d = 0
        d_prime = r * d + r * (2 * r - 1) * ell
    omega_degree = 2 * n * (g - 1) + n * (n - 1) * ell
    chi = n * (1 - g) - n * (n - 1) * ell // 2
    return {"group": group, "d_prime": d_prime, "chi": chi,
            "omega_degree": omega_degree}


def polarized_rank(ranks, mults, degs):
    """Weighted average of component ranks against polarization weights."""
    if not (len(ranks) == len(mults) == len(degs)):
        raise ValueError("rank, multiplicity and degree lists must align")
    num = Fraction(0)
    den = Fraction(0)
    for r, m, d in zip(ranks, mults, degs):
        num += Fraction(r) * m * d
        den += Fraction(m) * d
    if den == 0:
        raise ZeroDivisionError("total polarization weight is zero")
    return num / den


# ---------------------------------------------------------------------------
# conjugacy witnesses

def conjugacy_witness(phi1, phi2, rng, degree_bound=None, trials=60):
    """g invertible over R with g·phi1 = phi2·g, or None (bounded search).

    The linear system is solved coefficient-wise over the field; random
    combinations of the solution space are tested for a unit determinant.
    A miss at the degree bound is honest ignorance, not a disproof.
    """
    ring = phi1.ring
    if ring != phi2.ring or phi1.n != phi2.n:
        raise DimensionError("incompatible matrices")
    if ring.is_quotient or ring.nvars != 1:
        raise UnsupportedBaseError("conjugacy search implemented over k[t]")
    n = phi1.n
    field = ring.field
    max_deg = 0
    for mat in (phi1.mat, phi2.mat):
        for row in mat.rows:
            for entry in row:
                max_deg = max(max_deg, entry.total_degree())
    if degree_bound is None:
        degree_bound = 2 * max_deg
    ncoef = degree_bound + 1
    nunk = n * n * ncoef

    def unknown(i, j, d):
        return (i * n + j) * ncoef + d

    # rows of the linear system: one per (entry, degree) of g·phi1 - phi2·g
    out_deg = degree_bound + max_deg + 1
    rows = []
    for i in range(n):
        for j in range(n):
            coeffs = [[field.zero] * nunk for _ in range(out_deg)]
            for k in range(n):
                for d in range(ncoef):
                    # + g[i][k] * phi1[k][j]
                    for e, c in phi1.mat.rows[k][j].terms.items():
                        dd = d + e[0]
                        coeffs[dd][unknown(i, k, d)] = field.add(
                            coeffs[dd][unknown(i, k, d)], c)
                    # - phi2[i][k] * g[k][j]
                    for e, c in phi2.mat.rows[i][k].terms.items():
                        dd = d + e[0]
                        coeffs[dd][unknown(k, j, d)] = field.sub(
                            coeffs[dd][unknown(k, j, d)], c)
            rows.extend(coeffs)
    basis = field_nullspace(field, rows, nunk)
    if not basis:
        return None

    def vec_to_matrix(vec):
        entries = []
        for i in range(n):
            row = []
            for j in range(n):
                terms = {}
                for d in range(ncoef):
                    c = vec[unknown(i, j, d)]
                    if c != field.zero:
                        terms[(d,)] = c
                row.append(Poly(ring, terms, reduce=False))
            entries.append(row)
        return RingMatrix(ring, entries)

    for vec in basis:
        g = vec_to_matrix(vec)
        det = g.det()
        if det.is_unit():
            return g
    for _ in range(trials):
        vec = [field.zero] * nunk
        for b in basis:
            c = field.random(rng)
            if c != field.zero:
                vec = [field.add(v, field.mul(c, w)) for v, w in zip(vec, b)]
        g = vec_to_matrix(vec)
        det = g.det()
        if det.is_unit():
            return g
    return None
