import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from specdiv.errors import ParseError
from specdiv.fields import GF, QQ
from specdiv.polynomials import (Poly, Ring, reduce_fraction, uni_coeffs,
                                 uni_derivative, uni_divmod, uni_eval,
                                 uni_factor, uni_from_coeffs, uni_gcd,
                                 uni_irreducible, uni_xgcd)

F7 = GF(7)


def kt():
    return Ring(F7, ["t"])


coeff_lists = st.lists(st.integers(min_value=0, max_value=6),
                       min_size=0, max_size=6)


def to_poly(ring, coeffs):
    return uni_from_coeffs(ring, [ring.field.coerce(c) for c in coeffs])


# ---------------------------------------------------------------------------
# parsing and printing

def test_parse_examples():
    R = kt()
    assert str(R.parse("t^2 - 3*t + 1")) == "t^2 + 4*t + 1"
    assert str(R.parse("2t(t+1)")) == "2*t^2 + 2*t"
    assert R.parse("0").is_zero()
    assert R.parse("t/2") == R.parse("4t")  # 1/2 = 4 mod 7


def test_parse_rejects_unknown_variable():
    with pytest.raises(ParseError):
        kt().parse("t + u")


def test_parse_rejects_trailing_garbage():
    with pytest.raises(ParseError):
        kt().parse("t +")


def test_str_parse_round_trip_rational():
    R = Ring(QQ, ["x", "y"])
    f = R.parse("3/2*x^2*y - y + 7")
    assert R.parse(str(f)) == f


@given(coeff_lists)
def test_str_parse_round_trip_gf7(coeffs):
    R = kt()
    f = to_poly(R, coeffs)
    assert R.parse(str(f)) == f


# ---------------------------------------------------------------------------
# ring axioms

@given(coeff_lists, coeff_lists, coeff_lists)
@settings(max_examples=40)
def test_ring_axioms(a, b, c):
    R = kt()
    f, g, h = to_poly(R, a), to_poly(R, b), to_poly(R, c)
    assert f + g == g + f
    assert (f + g) + h == f + (g + h)
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == R.zero()


# ---------------------------------------------------------------------------
# univariate division, gcd, xgcd

@given(coeff_lists, coeff_lists)
@settings(max_examples=40)
def test_divmod_identity(a, b):
    R = kt()
    f, g = to_poly(R, a), to_poly(R, b)
    if g.is_zero():
        return
    q, r = uni_divmod(f, g)
    assert q * g + r == f
    assert r.is_zero() or r.total_degree() < g.total_degree()


@given(coeff_lists, coeff_lists)
@settings(max_examples=40)
def test_gcd_divides_and_bezout(a, b):
    R = kt()
    f, g = to_poly(R, a), to_poly(R, b)
    d = uni_gcd(f, g)
    if d.is_zero():
        assert f.is_zero() and g.is_zero()
        return
    assert uni_divmod(f, d)[1].is_zero()
    assert uni_divmod(g, d)[1].is_zero()
    d2, u, v = uni_xgcd(f, g)
    assert d2 == d
    assert u * f + v * g == d


def test_derivative_and_eval():
    R = kt()
    f = R.parse("t^3 + 2t + 5")
    assert uni_derivative(f) == R.parse("3t^2 + 2")
    assert uni_eval(f, F7.coerce(2)) == F7.coerce(8 + 4 + 5)


# ---------------------------------------------------------------------------
# factorization

def test_factor_gf7():
    R = kt()
    rng = random.Random(3)
    f = R.parse("t^2(t-1)^3(t^2+1)")
    factors = uni_factor(f, rng)
    rebuilt = R.one()
    for g, mult in factors:
        assert uni_irreducible(g)
        rebuilt = rebuilt * g ** mult
    assert rebuilt == f.monic()


@given(coeff_lists)
@settings(max_examples=25)
def test_factor_random_reassembles(coeffs):
    R = kt()
    rng = random.Random(11)
    f = to_poly(R, coeffs)
    if f.total_degree() < 1:
        return
    factors = uni_factor(f, rng)
    rebuilt = R.one()
    for g, mult in factors:
        rebuilt = rebuilt * g ** mult
    assert rebuilt == f.monic()


def test_factor_rationals_linear():
    R = Ring(QQ, ["t"])
    rng = random.Random(0)
    f = R.parse("(t - 1)(t + 2)^2")
    factors = uni_factor(f, rng)
    assert sorted((str(g), m) for g, m in factors) == [("t + 2", 2), ("t - 1", 1)]


def test_factor_rationals_irreducible_raises():
    R = Ring(QQ, ["t"])
    with pytest.raises(ValueError):
        uni_factor(R.parse("t^2 + 1"), random.Random(0))


def test_irreducibility_gf7():
    R = kt()
    assert uni_irreducible(R.parse("t^2 + 1"))       # -1 is a nonresidue mod 7
    assert not uni_irreducible(R.parse("t^2 - 1"))
    assert not uni_irreducible(R.parse("t^2 - 2"))   # 2 = 3^2 mod 7


# ---------------------------------------------------------------------------
# quotient rings

def test_quotient_ring_normal_forms():
    R = Ring(F7, ["t", "x"]).quotient(["x^2 - t"])
    x, t = R.var("x"), R.var("t")
    assert x * x == t
    assert (x + 1) * (x - 1) == t - 1
    assert x ** 4 == t * t


def test_quotient_tacnode_relation():
    A = Ring(F7, ["x", "y"]).quotient(["y^2 - x^4"])
    x, y = A.var("x"), A.var("y")
    assert y * y == x ** 4
    # x^4 rewrites to y^2 under grevlex, so powers of x collapse
    assert x ** 5 == (x ** 4) * x


def test_fraction_reduction():
    R = kt()
    num, den = reduce_fraction(R.parse("t^2 - 1"), R.parse("2t - 2"))
    assert str(num) == "4*t + 4"
    assert str(den) == "1"
    assert uni_divmod(R.parse("t^2 - 1"), R.parse("2t - 2"))[0] == num
