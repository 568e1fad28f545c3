import random

from specdiv.fields import GF
from specdiv.polynomials import Ring
from specdiv.groebner import (Ideal, artinian_dim, ideal_colon, intersect,
                              normal_form, reduced_groebner_basis,
                              s_polynomial, saturate)

from conftest import random_poly

F7 = GF(7)


def kst():
    return Ring(F7, ["s", "t"])


# ---------------------------------------------------------------------------
# bases

def test_zero_ideal_basis():
    I = Ideal(kst(), ["s^2 - s^2"])
    assert list(I.basis()) == []


def test_all_degree_two_monomials():
    I = Ideal(kst(), ["t^2 - s^2", "s^2", "s*t", "t^2"])
    assert sorted(str(g) for g in I.basis()) == ["s*t", "s^2", "t^2"]


def test_redundant_generator_drops():
    R = Ring(F7, ["x", "y"])
    I = Ideal(R, ["x^2", "y", "y^2 - x^4"])
    assert sorted(str(g) for g in I.basis()) == ["x^2", "y"]


def test_buchberger_criterion():
    rng = random.Random(31)
    R = kst()
    for _ in range(6):
        gens = [random_poly_2(R, rng) for _ in range(3)]
        basis = reduced_groebner_basis([g for g in gens if not g.is_zero()])
        for i in range(len(basis)):
            for j in range(i):
                s = s_polynomial(basis[i], basis[j])
                assert normal_form(s, basis).is_zero()


def random_poly_2(ring, rng):
    from specdiv.polynomials import Poly
    terms = {}
    for _ in range(4):
        e = (rng.randrange(3), rng.randrange(3))
        terms[e] = ring.field.random(rng)
    return Poly(ring, terms)


def test_normal_form_is_linear_idempotent_projection():
    rng = random.Random(37)
    R = kst()
    basis = Ideal(R, ["s^2 - t", "s*t - 1"]).basis()
    basis = list(basis)
    for _ in range(10):
        f = random_poly_2(R, rng)
        g = random_poly_2(R, rng)
        nf = lambda p: normal_form(p, basis)
        assert nf(nf(f)) == nf(f)
        assert nf(f + g) == nf(f) + nf(g)


# ---------------------------------------------------------------------------
# dimensions

def test_artinian_dim_tacnode_numbers():
    B = Ring(F7, ["s", "t"]).quotient(["t^2 - s^2"])
    assert artinian_dim(Ideal(B, ["s^2", "s*t", "t^2"])) == 3
    A = Ring(F7, ["x", "y"]).quotient(["y^2 - x^4"])
    assert artinian_dim(Ideal(A, ["x^2", "y"])) == 2


def test_artinian_dim_unit_ideal():
    A = Ring(F7, ["x", "y"]).quotient(["y^2 - x^4"])
    assert artinian_dim(Ideal(A, ["1"])) == 0


def test_artinian_dim_infinite():
    R = kst()
    assert artinian_dim(Ideal(R, ["s"])) is None
    assert artinian_dim(Ideal(R, [])) is None


def test_product_dimension_does_not_drop():
    rng = random.Random(41)
    R = Ring(F7, ["t"])
    for _ in range(8):
        I = Ideal(R, [random_poly(R, rng, 3, allow_zero=False)])
        J = Ideal(R, [random_poly(R, rng, 3, allow_zero=False)])
        if artinian_dim(I) is None or artinian_dim(J) is None:
            continue
        assert artinian_dim(I * J) >= artinian_dim(I)


# ---------------------------------------------------------------------------
# colon and saturation

def test_colon_principal():
    R = Ring(F7, ["x"])
    out = ideal_colon(Ideal(R, ["x^2"]), Ideal(R, ["x"]))
    assert [str(g) for g in out.basis()] == ["x"]


def test_colon_with_unit_ideal():
    rng = random.Random(43)
    R = kst()
    for _ in range(5):
        I = Ideal(R, [random_poly_2(R, rng), random_poly_2(R, rng)])
        assert ideal_colon(I, Ideal(R, ["1"])) == I.groebner()


def test_colon_certifies_regular_element_on_tacnode():
    A = Ring(F7, ["x", "y"]).quotient(["y^2 - x^4"])
    zero = Ideal(A, [])
    out = ideal_colon(zero, Ideal(A, ["x"]))
    assert out.is_zero()


def test_colon_product_adjunction():
    rng = random.Random(47)
    R = kst()
    for _ in range(6):
        I = Ideal(R, [random_poly_2(R, rng), random_poly_2(R, rng)])
        J = Ideal(R, [random_poly_2(R, rng)])
        if not J.gens:
            continue
        Q = ideal_colon(I, J)
        for q in Q.gens:
            for j in J.gens:
                assert I.contains(q * j)


def test_saturate_factor_removal():
    R = Ring(F7, ["t"])
    sat, n = saturate(Ideal(R, ["t^2(t-1)"]), Ideal(R, ["t"]))
    assert [str(g) for g in sat.basis()] == ["t + 6"]
    assert n == 2


def test_saturate_no_op():
    R = Ring(F7, ["t"])
    I = Ideal(R, ["t - 1"])
    sat, n = saturate(I, Ideal(R, ["t"]))
    assert sat == I.groebner()
    assert n == 0


def test_saturate_tacnode_origin():
    B = Ring(F7, ["s", "t"]).quotient(["t^2 - s^2"])
    I = Ideal(B, ["s^2", "s*t", "t^2"])
    sat, n = saturate(I, Ideal(B, ["s", "t"]))
    assert sat.is_unit_ideal()
    assert n == 2


def test_intersect_principal():
    R = Ring(F7, ["t"])
    meet = intersect(Ideal(R, ["t^2"]), Ideal(R, ["t(t-1)"]))
    assert [str(g) for g in meet.basis()] == [str(R.parse("t^2(t-1)").monic())]
