"""Sparse multivariate polynomials over an exact field.

A ``Ring`` is a polynomial ring k[x_1, ..., x_n] with a monomial order,
optionally presented as a quotient by a list of relation polynomials.
Quotient arithmetic works by reducing every product against the cached
Groebner basis of the relations, so a single code path serves k[t],
k[s, t] and singular quotients alike.

A ``Poly`` is an immutable term map {exponent tuple: coefficient}; the
zero polynomial has an empty map.  Elements of quotient rings are kept in
normal form at all times.
"""

from fractions import Fraction

from .errors import ParseError
from .fields import QQ, PrimeField


# ---------------------------------------------------------------------------
# monomial orders

class MonomialOrder:
    """Total order on exponent tuples, exposed as a sort key.

    Larger key = larger monomial.  ``blocks`` splits the variables into
    groups compared left to right (an elimination order); within a block
    the named base order applies.
    """

    __slots__ = ("name", "blocks")

    def __init__(self, name="grevlex", blocks=None):
        if name not in ("grevlex", "lex"):
            raise ValueError(f"unknown monomial order {name!r}")
        self.name = name
        self.blocks = None if blocks is None else tuple(tuple(b) for b in blocks)

    def key(self, exponents):
        if self.blocks is None:
            return self._block_key(exponents)
        parts = []
        for block in self.blocks:
            parts.append(self._block_key(tuple(exponents[i] for i in block)))
        return tuple(parts)

    def _block_key(self, e):
        if self.name == "lex":
            return tuple(e)
        return (sum(e), tuple(-c for c in reversed(e)))

    def __eq__(self, other):
        return (isinstance(other, MonomialOrder)
                and other.name == self.name and other.blocks == self.blocks)

    def __hash__(self):
        return hash((self.name, self.blocks))

    def __repr__(self):
        if self.blocks is None:
            return self.name
        return f"{self.name}{list(map(list, self.blocks))}"


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def elimination_order(nvars, eliminated):
    """Block order that eliminates the given variable indices."""
    first = tuple(eliminated)
    rest = tuple(i for i in range(nvars) if i not in eliminated)
    return MonomialOrder("grevlex", blocks=(first, rest))


# ---------------------------------------------------------------------------
# rings

class Ring:
    """k[names] with a monomial order, optionally modulo relations."""

    def __init__(self, field, names, order=GREVLEX, relations=()):
        self.field = field
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        self.order = order
        self._index = {n: i for i, n in enumerate(self.names)}
        # Relations are stored as raw term maps so a quotient ring can be
        # built without a chicken-and-egg Poly construction.
        self.relations = tuple(dict(t) for t in relations)
        self._relation_basis = None

    @property
    def nvars(self):
        return len(self.names)

    @property
    def is_quotient(self):
        return bool(self.relations)

    # -- constructors for elements ------------------------------------

    def zero(self):
        return Poly(self, {})

    def one(self):
        return Poly(self, {(0,) * self.nvars: self.field.one}, reduce=False)

    def const(self, c):
        c = self.field.coerce(c)
        if c == self.field.zero:
            return self.zero()
        return Poly(self, {(0,) * self.nvars: c}, reduce=False)

    def var(self, name):
        i = self._index[name]
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): self.field.one})

    def monomial(self, exponents, coeff=None):
        c = self.field.one if coeff is None else self.field.coerce(coeff)
        if c == self.field.zero:
            return self.zero()
        return Poly(self, {tuple(exponents): c})

    def parse(self, text):
        return _parse_poly(self, text)

    def coerce(self, value):
        if isinstance(value, Poly):
            if value.ring == self:
                return value
            raise ValueError("polynomial from a different ring")
        if isinstance(value, (int, Fraction)):
            return self.const(value)
        if isinstance(value, str):
            return self.parse(value)
        raise TypeError(f"cannot coerce {value!r} into {self!r}")

    # -- quotient plumbing ---------------------------------------------

    def free(self):
        """The underlying polynomial ring with no relations."""
        if not self.relations:
            return self
        return Ring(self.field, self.names, self.order)

    def quotient(self, relations):
        """A quotient of this ring by additional relation polynomials."""
        rel = list(self.relations)
        for f in relations:
            f = self.coerce(f) if not isinstance(f, Poly) else f
            if f.terms:
                rel.append(dict(f.terms))
        return Ring(self.field, self.names, self.order, relations=rel)

    def relation_basis(self):
        """Reduced Groebner basis of the relation ideal, in the free ring."""
        if self._relation_basis is None:
            if not self.relations:
                self._relation_basis = ()
            else:
                from .groebner import reduced_groebner_basis
                free = self.free()
                gens = [Poly(free, dict(t), reduce=False) for t in self.relations]
                self._relation_basis = tuple(reduced_groebner_basis(gens))
        return self._relation_basis

    def reduce(self, poly):
        """Normal form of a free-ring polynomial in this ring."""
        basis = self.relation_basis()
        if not basis:
            return Poly(self, poly.terms, reduce=False)
        from .groebner import normal_form
        free = self.free()
        nf = normal_form(Poly(free, poly.terms, reduce=False), basis)
        return Poly(self, nf.terms, reduce=False)

    def with_extra_vars(self, extra_names, order=None):
        """Extend by fresh variables (relations carried over, padded)."""
        names = self.names + tuple(extra_names)
        pad = len(extra_names)
        rel = [{e + (0,) * pad: c for e, c in t.items()} for t in self.relations]
        return Ring(self.field, names, order or self.order, relations=rel)

    def lift(self, poly, target):
        """Reinterpret a polynomial in a ring whose variables extend ours."""
        pos = [target._index[n] for n in self.names]
        terms = {}
        for e, c in poly.terms.items():
            new = [0] * target.nvars
            for i, v in enumerate(e):
                new[pos[i]] = v
            terms[tuple(new)] = c
        return Poly(target, terms)

    def fresh_name(self, stem="w"):
        i = 0
        while f"{stem}{i}" in self._index:
            i += 1
        return f"{stem}{i}"

    def __eq__(self, other):
        return (isinstance(other, Ring)
                and other.field == self.field
                and other.names == self.names
                and other.order == self.order
                and other.relations == self.relations)

    def __hash__(self):
        return hash((self.field, self.names, self.order, len(self.relations)))

    def __repr__(self):
        base = f"{self.field!r}[{', '.join(self.names)}]"
        if self.relations:
            rels = ", ".join(str(Poly(self.free(), t, reduce=False))
                             for t in self.relations)
            return f"{base}/({rels})"
        return base


# ---------------------------------------------------------------------------
# polynomials

class Poly:
    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms, reduce=True):
        field = ring.field
        zero = field.zero
        clean = {e: c for e, c in terms.items() if c != zero}
        if reduce and ring.relations and clean:
            reduced = ring.reduce(Poly(ring.free(), clean, reduce=False))
            clean = reduced.terms
        self.ring = ring
        self.terms = clean

    # -- basic structure ------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(sum(e) == 0 for e in self.terms)

    def is_unit(self):
        # For fields, units of the free ring are nonzero constants.  In a
        # quotient ring constants remain units; nonconstant units are not
        # recognized here (callers needing more use ideal membership).
        return bool(self.terms) and self.is_constant()

    def constant_value(self):
        if not self.terms:
            return self.ring.field.zero
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return next(iter(self.terms.values()))

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, name):
        if not self.terms:
            return -1
        i = self.ring._index[name]
        return max(e[i] for e in self.terms)

    def variables(self):
        used = set()
        for e in self.terms:
            for i, v in enumerate(e):
                if v:
                    used.add(self.ring.names[i])
        return used

    def leading(self):
        """(exponent, coefficient) of the leading term."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=self.ring.order.key)
        return e, self.terms[e]

    def leading_monomial(self):
        return self.leading()[0]

    def monic(self):
        if not self.terms:
            return self
        _, c = self.leading()
        if c == self.ring.field.one:
            return self
        inv = self.ring.field.inv(c)
        return self.scale(inv)

    def coefficient_of(self, name, power):
        """Coefficient of name**power, as a polynomial in the other vars."""
        i = self.ring._index[name]
        terms = {}
        for e, c in self.terms.items():
            if e[i] == power:
                reduced = list(e)
                reduced[i] = 0
                terms[tuple(reduced)] = c
        return Poly(self.ring, terms, reduce=False)

    # -- arithmetic -------------------------------------------------------

    def _same_ring(self, other):
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise ValueError("mixed rings")
            return other
        return self.ring.coerce(other)

    def __add__(self, other):
        other = self._same_ring(other)
        field = self.ring.field
        res = dict(self.terms)
        for e, c in other.terms.items():
            s = field.add(res.get(e, field.zero), c)
            if s == field.zero:
                res.pop(e, None)
            else:
                res[e] = s
        return Poly(self.ring, res, reduce=False)

    __radd__ = __add__

    def __neg__(self):
        field = self.ring.field
        return Poly(self.ring, {e: field.neg(c) for e, c in self.terms.items()},
                    reduce=False)

    def __sub__(self, other):
        return self + (-self._same_ring(other))

    def __rsub__(self, other):
        return self._same_ring(other) - self

    def __mul__(self, other):
        other = self._same_ring(other)
        field = self.ring.field
        res = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = field.add(res.get(e, field.zero), field.mul(c1, c2))
                if s == field.zero:
                    res.pop(e, None)
                else:
                    res[e] = s
        return Poly(self.ring, res)

    __rmul__ = __mul__

    def scale(self, c):
        field = self.ring.field
        c = field.coerce(c)
        if c == field.zero:
            return self.ring.zero()
        return Poly(self.ring, {e: field.mul(k, c) for e, k in self.terms.items()},
                    reduce=False)

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative polynomial power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base_needed = n > 1
            n >>= 1
            if base_needed and n:
                base = base * base
        return result

    def mul_monomial(self, exponents, coeff):
        field = self.ring.field
        res = {tuple(a + b for a, b in zip(e, exponents)): field.mul(c, coeff)
               for e, c in self.terms.items()}
        return Poly(self.ring, res)

    def subs(self, mapping):
        """Substitute variables; values may be Polys, strings or scalars.

        The result lives in the ring of the first Poly value, or in this
        polynomial's ring when all values are scalars/strings.
        """
        target = None
        for v in mapping.values():
            if isinstance(v, Poly):
                target = v.ring
                break
        if target is None:
            target = self.ring
        images = {}
        for name, v in mapping.items():
            images[name] = target.coerce(v)
        result = target.zero()
        for e, c in self.terms.items():
            term = target.const(c)
            for i, exp in enumerate(e):
                if exp == 0:
                    continue
                name = self.ring.names[i]
                img = images.get(name)
                if img is None:
                    img = target.var(name)
                term = term * img ** exp
            result = result + term
        return result

    # -- comparison / display ---------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return other.ring == self.ring and other.terms == self.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sort_key(self):
        return sorted(((self.ring.order.key(e), e) for e in self.terms),
                      reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.ring.names
        parts = []
        order = self.ring.order
        for e in sorted(self.terms, key=order.key, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                f"{names[i]}^{v}" if v > 1 else names[i]
                for i, v in enumerate(e) if v)
            neg = _is_negative(c)
            mag = -c if neg else c
            if mono:
                body = mono if mag == 1 else f"{mag}*{mono}"
            else:
                body = str(mag)
            if not parts:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"<{self}>"


def _is_negative(c):
    if isinstance(c, Fraction):
        return c < 0
    return False  # GF(p) coefficients print as canonical representatives


# ---------------------------------------------------------------------------
# parsing

def _tokenize(text):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j]), i))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
        elif ch in "+-*/^()":
            tokens.append((ch, ch, i))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, ring, text):
        self.ring = ring
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind=None):
        tok = self.tokens[self.pos]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind}, found {tok[1]!r}", tok[2])
        self.pos += 1
        return tok

    def parse(self):
        poly = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"trailing input {tok[1]!r}", tok[2])
        return poly

    def expr(self):
        if self.peek()[0] == "-":
            self.take()
            value = -self.term()
        else:
            value = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.power()
        while True:
            tok = self.peek()
            if tok[0] == "*":
                self.take()
                value = value * self.power()
            elif tok[0] == "/":
                self.take()
                divisor = self.power()
                if not divisor.is_unit():
                    raise ParseError("division only by nonzero constants", tok[2])
                value = value.scale(self.ring.field.inv(divisor.constant_value()))
            elif tok[0] in ("name", "int", "("):
                # implicit multiplication: 2t, 3(x+1), t(x)
                value = value * self.power()
            else:
                return value

    def power(self):
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            sign = 1
            if self.peek()[0] == "-":
                raise ParseError("negative exponents are not supported",
                                 self.peek()[2])
            tok = self.take("int")
            return base ** (sign * tok[1])
        return base

    def atom(self):
        tok = self.peek()
        if tok[0] == "int":
            self.take()
            return self.ring.const(tok[1])
        if tok[0] == "name":
            self.take()
            if tok[1] not in self.ring._index:
                raise ParseError(f"unknown variable {tok[1]!r}", tok[2])
            return self.ring.var(tok[1])
        if tok[0] == "(":
            self.take()
            value = self.expr()
            self.take(")")
            return value
        if tok[0] == "-":
            self.take()
            return -self.atom()
        raise ParseError(f"unexpected token {tok[1]!r}", tok[2])


def _parse_poly(ring, text):
    return _Parser(ring, text).parse()


# ---------------------------------------------------------------------------
# univariate helpers (free rings in one variable)

def _check_univariate(f):
    if f.ring.is_quotient or f.ring.nvars != 1:
        raise ValueError("univariate operation on a non-univariate ring")


def uni_coeffs(f):
    """Dense coefficient list, constant first; [] for the zero polynomial."""
    _check_univariate(f)
    if not f.terms:
        return []
    d = max(e[0] for e in f.terms)
    zero = f.ring.field.zero
    out = [zero] * (d + 1)
    for e, c in f.terms.items():
        out[e[0]] = c
    return out


def uni_from_coeffs(ring, coeffs):
    return Poly(ring, {(i,): c for i, c in enumerate(coeffs)}, reduce=False)


def uni_divmod(f, g):
    """Euclidean division in k[t]; returns (quotient, remainder)."""
    _check_univariate(f)
    if g.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    field = f.ring.field
    a = uni_coeffs(f)
    b = uni_coeffs(g)
    db = len(b) - 1
    lead_inv = field.inv(b[-1])
    q = [field.zero] * max(len(a) - db, 0)
    r = list(a)
    while len(r) - 1 >= db and r:
        if r[-1] == field.zero:
            r.pop()
            continue
        shift = len(r) - 1 - db
        factor = field.mul(r[-1], lead_inv)
        q[shift] = factor
        for i in range(db + 1):
            r[shift + i] = field.sub(r[shift + i], field.mul(factor, b[i]))
        r.pop()
    while r and r[-1] == field.zero:
        r.pop()
    ring = f.ring
    return uni_from_coeffs(ring, q), uni_from_coeffs(ring, r)


def uni_gcd(f, g):
    """Monic gcd in k[t]."""
    a, b = f, g
    while not b.is_zero():
        _, r = uni_divmod(a, b)
        a, b = b, r
    return a.monic() if not a.is_zero() else a


def uni_xgcd(f, g):
    """(g, u, v) with u*f + v*g = gcd, gcd monic."""
    ring = f.ring
    r0, r1 = f, g
    u0, u1 = ring.one(), ring.zero()
    v0, v1 = ring.zero(), ring.one()
    while not r1.is_zero():
        q, r = uni_divmod(r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, u0 - q * u1
        v0, v1 = v1, v0 - q * v1
    if r0.is_zero():
        return r0, u0, v0
    _, lc = r0.leading()
    inv = ring.field.inv(lc)
    return r0.scale(inv), u0.scale(inv), v0.scale(inv)


def uni_derivative(f):
    _check_univariate(f)
    field = f.ring.field
    terms = {}
    for e, c in f.terms.items():
        if e[0] > 0:
            d = field.mul(c, field.coerce(e[0]))
            if d != field.zero:
                terms[(e[0] - 1,)] = d
    return Poly(f.ring, terms, reduce=False)


def uni_eval(f, c):
    """Evaluate at a field element, by Horner."""
    field = f.ring.field
    coeffs = uni_coeffs(f)
    acc = field.zero
    for a in reversed(coeffs):
        acc = field.add(field.mul(acc, c), a)
    return acc


def uni_pow_mod(base, exponent, modulus):
    result = base.ring.one()
    b = uni_divmod(base, modulus)[1]
    e = exponent
    while e:
        if e & 1:
            result = uni_divmod(result * b, modulus)[1]
        e >>= 1
        if e:
            b = uni_divmod(b * b, modulus)[1]
    return result


def is_squarefree(f):
    return uni_gcd(f, uni_derivative(f)).total_degree() == 0


def uni_irreducible(f):
    """Irreducibility over GF(p), by the Rabin test."""
    field = f.ring.field
    if not isinstance(field, PrimeField):
        raise ValueError("irreducibility test implemented over GF(p) only")
    n = f.total_degree()
    if n <= 0:
        return False
    if n == 1:
        return True
    p = field.p
    ring = f.ring
    x = ring.var(ring.names[0])
    f = f.monic()
    # x^(p^n) == x mod f, and gcd(x^(p^(n/q)) - x, f) == 1 for prime q | n
    h = uni_pow_mod(x, p ** n, f)
    if h != uni_divmod(x, f)[1]:
        return False
    for q in _prime_factors(n):
        h = uni_pow_mod(x, p ** (n // q), f)
        if uni_gcd(h - x, f).total_degree() != 0:
            return False
    return True


def _prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def uni_factor(f, rng):
    """Factor into monic irreducibles over GF(p): list of (factor, mult).

    Cantor-Zassenhaus with squarefree and distinct-degree preprocessing.
    Over the rationals only linear factors are split off (by rational root
    search); any nonlinear remainder raises.
    """
    field = f.ring.field
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if isinstance(field, PrimeField):
        return _factor_gf(f.monic(), rng)
    return _factor_linear_rationals(f.monic())


def _factor_gf(f, rng):
    field = f.ring.field
    p = field.p
    factors = {}

    def add(g, mult):
        key = str(g)
        if key in factors:
            factors[key] = (g, factors[key][1] + mult)
        else:
            factors[key] = (g, mult)

    def squarefree_split(g, outer=1):
        # handles p-th power collapse g(t) = h(t^p)
        while True:
            d = uni_derivative(g)
            if d.is_zero():
                coeffs = uni_coeffs(g)
                collapsed = [coeffs[i] for i in range(0, len(coeffs), p)]
                g = uni_from_coeffs(g.ring, collapsed)
                outer *= p
                continue
            break
        w = uni_gcd(g, uni_derivative(g))
        sqf = uni_divmod(g, w)[0]
        mult = 1
        while sqf.total_degree() > 0:
            part = sqf
            nxt = uni_gcd(w, sqf)
            piece = uni_divmod(part, nxt)[0]
            if piece.total_degree() > 0:
                for irr in _equal_degree_all(piece, rng):
                    add(irr, mult * outer)
            w = uni_divmod(w, nxt)[0]
            sqf = nxt
            mult += 1
        if w.total_degree() > 0:
            squarefree_split(w, outer)

    def _equal_degree_all(g, rng):
        # distinct-degree then Cantor-Zassenhaus on squarefree g
        out = []
        ring = g.ring
        x = ring.var(ring.names[0])
        h = uni_divmod(x, g)[1]
        d = 1
        rest = g
        while rest.total_degree() >= 2 * d:
            h = uni_pow_mod(h, p, rest)
            gd = uni_gcd(h - x, rest)
            if gd.total_degree() > 0:
                out.extend(_split_equal_degree(gd, d, rng))
                rest = uni_divmod(rest, gd)[0]
                h = uni_divmod(h, rest)[1]
            d += 1
        if rest.total_degree() > 0:
            out.append(rest.monic())
        return out

    def _split_equal_degree(g, d, rng):
        n = g.total_degree()
        if n == d:
            return [g.monic()]
        ring = g.ring
        while True:
            coeffs = [field.random(rng) for _ in range(n)]
            a = uni_from_coeffs(ring, coeffs)
            if a.total_degree() < 1:
                continue
            gd = uni_gcd(a, g)
            if 0 < gd.total_degree() < n:
                left, right = gd, uni_divmod(g, gd)[0]
            else:
                if p == 2:
                    b = a
                    t = a
                    for _ in range(d - 1):
                        t = uni_pow_mod(t, 2, g)
                        b = uni_divmod(b + t, g)[1]
                else:
                    e = (p ** d - 1) // 2
                    b = uni_pow_mod(a, e, g) - ring.one()
                gd = uni_gcd(b, g)
                if not (0 < gd.total_degree() < n):
                    continue
                left, right = gd, uni_divmod(g, gd)[0]
            return (_split_equal_degree(left, d, rng)
                    + _split_equal_degree(right, d, rng))

    squarefree_split(f)
    return sorted(factors.values(), key=lambda it: (it[0].total_degree(), str(it[0])))


def _factor_linear_rationals(f):
    ring = f.ring
    factors = []
    g = f
    # rational roots r = a/b with a | constant, b | leading (integer-cleared)
    while g.total_degree() >= 1:
        coeffs = uni_coeffs(g)
        denom = 1
        for c in coeffs:
            denom = denom * c.denominator // _gcd_int(denom, c.denominator)
        ints = [int(c * denom) for c in coeffs]
        lead, const = ints[-1], ints[0]
        if const == 0:
            root = Fraction(0)
        else:
            root = None
            for a in _divisors(abs(const)):
                for b in _divisors(abs(lead)):
                    for s in (1, -1):
                        cand = Fraction(s * a, b)
                        if uni_eval(g, cand) == 0:
                            root = cand
                            break
                    if root is not None:
                        break
                if root is not None:
                    break
            if root is None:
                raise ValueError(
                    f"cannot factor {g} over the rationals (no rational root)")
        lin = ring.var(ring.names[0]) - ring.const(root)
        mult = 0
        while True:
            q, r = uni_divmod(g, lin)
            if not r.is_zero():
                break
            g, mult = q, mult + 1
        factors.append((lin, mult))
    return sorted(factors, key=lambda it: str(it[0]))


def _gcd_int(a, b):
    while b:
        a, b = b, a % b
    return a


def _divisors(n):
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def reduce_fraction(num, den):
    """Cancel the gcd of a k[t] fraction; denominator returned monic."""
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    if num.is_zero():
        return num, den.ring.one()
    g = uni_gcd(num, den)
    if g.total_degree() > 0:
        num = uni_divmod(num, g)[0]
        den = uni_divmod(den, g)[0]
    _, lc = den.leading()
    inv = den.ring.field.inv(lc)
    return num.scale(inv), den.scale(inv)
