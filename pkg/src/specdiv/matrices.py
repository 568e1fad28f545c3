"""Exact linear algebra over polynomial rings and their quotients.

Determinants use fraction-free Bareiss elimination when the entry ring is
a free polynomial ring (a domain with exact division) and cofactor
expansion otherwise; sizes stay small enough for the latter.  Smith normal
form is provided over k[t].
"""

from itertools import combinations

from .errors import DimensionError
from .polynomials import uni_divmod
from .groebner import _exact_poly_div


class RingMatrix:
    """Immutable rectangular matrix with entries in one Ring."""

    __slots__ = ("ring", "rows", "nrows", "ncols")

    def __init__(self, ring, rows):
        self.ring = ring
        coerced = []
        width = None
        for row in rows:
            row = [ring.coerce(x) for x in row]
            if width is None:
                width = len(row)
            elif len(row) != width:
                raise DimensionError("ragged rows")
            coerced.append(tuple(row))
        self.rows = tuple(coerced)
        self.nrows = len(self.rows)
        self.ncols = width or 0

    @classmethod
    def identity(cls, ring, n):
        one, zero = ring.one(), ring.zero()
        return cls(ring, [[one if i == j else zero for j in range(n)]
                          for i in range(n)])

    @classmethod
    def zero(cls, ring, nrows, ncols):
        z = ring.zero()
        return cls(ring, [[z] * ncols for _ in range(nrows)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j):
        return [self.rows[i][j] for i in range(self.nrows)]

    def transpose(self):
        return RingMatrix(self.ring, [[self.rows[i][j] for i in range(self.nrows)]
                                      for j in range(self.ncols)])

    def __add__(self, other):
        self._compat(other, same_shape=True)
        return RingMatrix(self.ring,
                          [[a + b for a, b in zip(r1, r2)]
                           for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other):
        self._compat(other, same_shape=True)
        return RingMatrix(self.ring,
                          [[a - b for a, b in zip(r1, r2)]
                           for r1, r2 in zip(self.rows, other.rows)])

    def __mul__(self, other):
        if isinstance(other, RingMatrix):
            if other.ring != self.ring:
                raise DimensionError("mixed rings")
            if self.ncols != other.nrows:
                raise DimensionError("inner dimensions disagree")
            cols = other.transpose().rows
            return RingMatrix(self.ring,
                              [[_dot(row, col) for col in cols]
                               for row in self.rows])
        scalar = self.ring.coerce(other)
        return RingMatrix(self.ring,
                          [[a * scalar for a in row] for row in self.rows])

    __rmul__ = __mul__

    def __neg__(self):
        return RingMatrix(self.ring, [[-a for a in row] for row in self.rows])

    def __eq__(self, other):
        return (isinstance(other, RingMatrix) and other.ring == self.ring
                and other.rows == self.rows)

    def __hash__(self):
        return hash((self.ring, self.rows))

    def is_zero(self):
        return all(a.is_zero() for row in self.rows for a in row)

    def map(self, fn, ring=None):
        return RingMatrix(ring or self.ring,
                          [[fn(a) for a in row] for row in self.rows])

    def trace(self):
        if self.nrows != self.ncols:
            raise DimensionError("trace of a non-square matrix")
        t = self.ring.zero()
        for i in range(self.nrows):
            t = t + self.rows[i][i]
        return t

    def _compat(self, other, same_shape=False):
        if not isinstance(other, RingMatrix) or other.ring != self.ring:
            raise DimensionError("mixed rings")
        if same_shape and (other.nrows, other.ncols) != (self.nrows, self.ncols):
            raise DimensionError("shapes disagree")

    def det(self):
        """Exact determinant.

        Bareiss fraction-free elimination on free polynomial rings;
        cofactor expansion on quotient rings (zero divisors rule out the
        exact divisions Bareiss relies on).
        """
        if self.nrows != self.ncols:
            raise DimensionError("determinant of a non-square matrix")
        if self.nrows == 0:
            return self.ring.one()
        if self.ring.is_quotient:
            return _det_cofactor(self)
        return _det_bareiss(self)

    def charpoly(self, var=None):
        """det(x·I - M) as a monic polynomial in a fresh variable x."""
        if self.nrows != self.ncols:
            raise DimensionError("characteristic polynomial of a non-square matrix")
        ring = self.ring
        name = var or ring.fresh_name("x")
        if name in ring.names:
            raise ValueError(f"variable {name!r} already in the ring")
        ext = ring.with_extra_vars([name])
        x = ext.var(name)
        n = self.nrows
        lifted = self.map(lambda a: ring.lift(a, ext), ring=ext)
        xid = RingMatrix.identity(ext, n) * x
        return (xid - lifted).det()

    def minors(self, k):
        """All k x k minors (as a list, row/column index order)."""
        out = []
        for rsel in combinations(range(self.nrows), k):
            for csel in combinations(range(self.ncols), k):
                sub = RingMatrix(self.ring,
                                 [[self.rows[i][j] for j in csel] for i in rsel])
                out.append(sub.det())
        return out

    def __repr__(self):
        body = "; ".join("[" + ", ".join(str(a) for a in row) + "]"
                         for row in self.rows)
        return f"RingMatrix({body})"


def _dot(row, col):
    acc = None
    for a, b in zip(row, col):
        term = a * b
        acc = term if acc is None else acc + term
    return acc


def _det_cofactor(m):
    n = m.nrows
    if n == 1:
        return m.rows[0][0]
    if n == 2:
        return m.rows[0][0] * m.rows[1][1] - m.rows[0][1] * m.rows[1][0]
    total = m.ring.zero()
    cols = list(range(1, n))
    for i in range(n):
        a = m.rows[i][0]
        if a.is_zero():
            continue
        sub = RingMatrix(m.ring, [[m.rows[r][c] for c in cols]
                                  for r in range(n) if r != i])
        term = a * _det_cofactor(sub)
        total = total + term if i % 2 == 0 else total - term
    return total


def _det_bareiss(m):
    ring = m.ring
    a = [list(row) for row in m.rows]
    n = m.nrows
    sign = 1
    prev = ring.one()
    for k in range(n - 1):
        if a[k][k].is_zero():
            pivot = next((i for i in range(k + 1, n) if not a[i][k].is_zero()),
                         None)
            if pivot is None:
                return ring.zero()
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[k][k] * a[i][j] - a[i][k] * a[k][j]
                q = _exact_poly_div(num, prev)
                if q is None:
                    raise ArithmeticError("Bareiss division was not exact")
                a[i][j] = q
        prev = a[k][k]
    d = a[n - 1][n - 1]
    return -d if sign < 0 else d


def adjugate(m):
    """Adjugate matrix: adj(M)·M = det(M)·I."""
    n = m.nrows
    if n != m.ncols:
        raise DimensionError("adjugate of a non-square matrix")
    if n == 1:
        return RingMatrix.identity(m.ring, 1)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            sub = RingMatrix(m.ring,
                             [[m.rows[r][c] for c in range(n) if c != i]
                              for r in range(n) if r != j])
            cof = sub.det()
            row.append(cof if (i + j) % 2 == 0 else -cof)
        rows.append(row)
    return RingMatrix(m.ring, rows)


# ---------------------------------------------------------------------------
# Smith normal form over k[t]

class SmithForm:
    """U·M·V = diag(invariants, then zeros); U, V unimodular over k[t]."""

    __slots__ = ("invariants", "U", "V", "Uinv")

    def __init__(self, invariants, U, V, Uinv):
        self.invariants = invariants
        self.U = U
        self.V = V
        self.Uinv = Uinv


def smith_normal_form(m):
    """Smith normal form of a matrix over k[t].

    Returns a SmithForm with monic invariant factors d_1 | d_2 | ... and
    the transforms, including U^-1 (handy for lattice bases).
    """
    ring = m.ring
    if ring.is_quotient or ring.nvars != 1:
        raise DimensionError("Smith form implemented over k[t] only")
    a = [list(row) for row in m.rows]
    nr, nc = m.nrows, m.ncols
    U = [list(r) for r in RingMatrix.identity(ring, nr).rows]
    Uinv = [list(r) for r in RingMatrix.identity(ring, nr).rows]
    V = [list(r) for r in RingMatrix.identity(ring, nc).rows]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]
        for r in Uinv:
            r[i], r[j] = r[j], r[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def row_op(i, j, q):
        # row_i -= q * row_j ; inverse column op on Uinv
        a[i] = [x - q * y for x, y in zip(a[i], a[j])]
        U[i] = [x - q * y for x, y in zip(U[i], U[j])]
        for r in Uinv:
            r[j] = r[j] + q * r[i]

    def col_op(i, j, q):
        # col_i -= q * col_j
        for r in a:
            r[i] = r[i] - q * r[j]
        for r in V:
            r[i] = r[i] - q * r[j]

    def scale_row(i, c):
        inv = ring.field.inv(c)
        a[i] = [x.scale(inv) for x in a[i]]
        U[i] = [x.scale(inv) for x in U[i]]
        for r in Uinv:
            r[i] = r[i].scale(c)

    k = 0
    limit = min(nr, nc)
    while k < limit:
        # find the entry of least degree in the remaining block
        best = None
        for i in range(k, nr):
            for j in range(k, nc):
                if a[i][j].is_zero():
                    continue
                d = a[i][j].total_degree()
                if best is None or d < best[0]:
                    best = (d, i, j)
        if best is None:
            break
        _, bi, bj = best
        if bi != k:
            swap_rows(k, bi)
        if bj != k:
            swap_cols(k, bj)
        dirty = False
        for i in range(k + 1, nr):
            if a[i][k].is_zero():
                continue
            q, r = uni_divmod(a[i][k], a[k][k])
            row_op(i, k, q)
            if not r.is_zero():
                dirty = True
        for j in range(k + 1, nc):
            if a[k][j].is_zero():
                continue
            q, r = uni_divmod(a[k][j], a[k][k])
            col_op(j, k, q)
            if not r.is_zero():
                dirty = True
        if dirty:
            continue
        # pivot must divide the rest of the block for the chain property
        offender = None
        for i in range(k + 1, nr):
            for j in range(k + 1, nc):
                if a[i][j].is_zero():
                    continue
                _, r = uni_divmod(a[i][j], a[k][k])
                if not r.is_zero():
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            a[k] = [x + y for x, y in zip(a[k], a[offender])]
            U[k] = [x + y for x, y in zip(U[k], U[offender])]
            for r in Uinv:
                r[offender] = r[offender] - r[k]
            continue
        scale_row(k, a[k][k].leading()[1])
        k += 1

    invariants = [a[i][i] for i in range(min(nr, nc)) if not a[i][i].is_zero()]
    return SmithForm(invariants,
                     RingMatrix(ring, U),
                     RingMatrix(ring, V),
                     RingMatrix(ring, Uinv))


# ---------------------------------------------------------------------------
# dense linear algebra over the coefficient field

def field_rank(field, rows):
    """Rank of a matrix given as lists of field elements."""
    m = [list(r) for r in rows]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    rank = 0
    for col in range(nc):
        pivot = next((i for i in range(rank, nr) if m[i][col] != field.zero),
                     None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = field.inv(m[rank][col])
        m[rank] = [field.mul(x, inv) for x in m[rank]]
        for i in range(nr):
            if i != rank and m[i][col] != field.zero:
                c = m[i][col]
                m[i] = [field.sub(x, field.mul(c, y))
                        for x, y in zip(m[i], m[rank])]
        rank += 1
        if rank == nr:
            break
    return rank


def field_nullspace(field, rows, ncols):
    """Basis of the right nullspace of a matrix over the field."""
    m = [list(r) for r in rows]
    nr = len(m)
    pivots = []
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, nr) if m[i][col] != field.zero),
                     None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = field.inv(m[rank][col])
        m[rank] = [field.mul(x, inv) for x in m[rank]]
        for i in range(nr):
            if i != rank and m[i][col] != field.zero:
                c = m[i][col]
                m[i] = [field.sub(x, field.mul(c, y))
                        for x, y in zip(m[i], m[rank])]
        pivots.append(col)
        rank += 1
        if rank == nr:
            break
    free_cols = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free_cols:
        vec = [field.zero] * ncols
        vec[fc] = field.one
        for r, pc in enumerate(pivots):
            vec[pc] = field.neg(m[r][fc])
        basis.append(vec)
    return basis


def field_solve(field, rows, rhs):
    """One solution of A·x = b over the field, or None."""
    nr = len(rows)
    nc = len(rows[0]) if nr else 0
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots = []
    rank = 0
    for col in range(nc):
        pivot = next((i for i in range(rank, nr) if m[i][col] != field.zero),
                     None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = field.inv(m[rank][col])
        m[rank] = [field.mul(x, inv) for x in m[rank]]
        for i in range(nr):
            if i != rank and m[i][col] != field.zero:
                c = m[i][col]
                m[i] = [field.sub(x, field.mul(c, y))
                        for x, y in zip(m[i], m[rank])]
        pivots.append(col)
        rank += 1
    for i in range(rank, nr):
        if m[i][nc] != field.zero:
            return None
    x = [field.zero] * nc
    for r, pc in enumerate(pivots):
        x[pc] = m[r][nc]
    return x
