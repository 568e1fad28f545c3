import random

import pytest

from specdiv.errors import DimensionError
from specdiv.fields import GF
from specdiv.polynomials import Ring, uni_divmod
from specdiv.matrices import (RingMatrix, adjugate, field_nullspace,
                              field_rank, field_solve, smith_normal_form)

from conftest import random_poly

F7 = GF(7)


def kt():
    return Ring(F7, ["t"])


def random_matrix(ring, rng, n, deg=3):
    return RingMatrix(ring, [[random_poly(ring, rng, deg) for _ in range(n)]
                             for _ in range(n)])


# ---------------------------------------------------------------------------
# determinants

def test_det_identity():
    R = Ring(F7, ["t", "x"])
    assert RingMatrix.identity(R, 2).det() == R.one()


def test_det_2x2_cofactor():
    R = Ring(F7, ["t", "x"])
    m = RingMatrix(R, [["0", "t"], ["1", "0"]])
    assert m.det() == R.parse("-t")


def test_det_norm_form():
    R = Ring(F7, ["t", "a", "b"])
    m = RingMatrix(R, [["a", "t*b"], ["b", "a"]])
    assert m.det() == R.parse("a^2 - t*b^2")


def test_det_non_square_raises():
    R = kt()
    with pytest.raises(DimensionError):
        RingMatrix(R, [["t", "1"]]).det()


def test_det_multiplicative():
    R = kt()
    rng = random.Random(5)
    for n in (2, 3, 4):
        for _ in range(6):
            a = random_matrix(R, rng, n)
            b = random_matrix(R, rng, n)
            assert (a * b).det() == a.det() * b.det()


def test_det_cofactor_matches_bareiss_on_quotient():
    # same matrix over the free ring and a trivial quotient must agree
    free = Ring(F7, ["t"])
    quot = Ring(F7, ["t", "z"]).quotient(["z"])
    rng = random.Random(6)
    for _ in range(5):
        rows = [[random_poly(free, rng, 2) for _ in range(3)] for _ in range(3)]
        det_free = RingMatrix(free, rows).det()
        lifted = [[quot.parse(str(e)) for e in row] for row in rows]
        det_quot = RingMatrix(quot, lifted).det()
        assert str(det_free) == str(det_quot)


def test_adjugate_identity():
    R = kt()
    rng = random.Random(9)
    m = random_matrix(R, rng, 3, deg=2)
    adj = adjugate(m)
    d = m.det()
    prod = adj * m
    for i in range(3):
        for j in range(3):
            assert prod.rows[i][j] == (d if i == j else R.zero())


# ---------------------------------------------------------------------------
# characteristic polynomials

def test_charpoly_zero_matrix():
    R = kt()
    m = RingMatrix.zero(R, 3, 3)
    cp = m.charpoly("x")
    assert str(cp) == "x^3"


def test_charpoly_companion():
    R = kt()
    m = RingMatrix(R, [["0", "t"], ["1", "0"]])
    cp = m.charpoly("x")
    assert str(cp) == "x^2 + 6*t"  # x^2 - t


def test_charpoly_diagonal():
    R = kt()
    f, g = R.parse("t"), R.parse("t + 1")
    m = RingMatrix(R, [[f, R.zero()], [R.zero(), g]])
    cp = m.charpoly("x")
    ext = cp.ring
    x = ext.var("x")
    f_l, g_l = R.lift(f, ext), R.lift(g, ext)
    assert cp == (x - f_l) * (x - g_l)


def test_charpoly_similarity_invariant():
    R = kt()
    rng = random.Random(17)
    for _ in range(8):
        m = random_matrix(R, rng, 3, deg=2)
        # random constant invertible g
        while True:
            g_rows = [[R.const(F7.random(rng)) for _ in range(3)]
                      for _ in range(3)]
            g = RingMatrix(R, g_rows)
            det = g.det()
            if det.is_unit():
                break
        inv_scale = F7.inv(det.constant_value())
        g_inv = adjugate(g).map(lambda e: e.scale(inv_scale))
        conj = g * m * g_inv
        assert conj.charpoly("x") == m.charpoly("x")


# ---------------------------------------------------------------------------
# Smith normal form

def invariants_str(m):
    return [str(d) for d in smith_normal_form(m).invariants]


def test_smith_already_diagonal():
    R = kt()
    m = RingMatrix(R, [["t", "0"], ["0", "t^2"]])
    assert invariants_str(m) == ["t", "t^2"]


def test_smith_needs_work():
    R = kt()
    m = RingMatrix(R, [["t", "1"], ["0", "t"]])
    assert invariants_str(m) == ["1", "t^2"]


def test_smith_zero_matrix():
    R = kt()
    assert invariants_str(RingMatrix.zero(R, 2, 2)) == []


def test_smith_transforms_and_divisibility():
    R = kt()
    rng = random.Random(23)
    for _ in range(8):
        nr, nc = rng.choice([(2, 2), (3, 3), (2, 4), (4, 2), (3, 4)])
        m = RingMatrix(R, [[random_poly(R, rng, 3) for _ in range(nc)]
                           for _ in range(nr)])
        sf = smith_normal_form(m)
        d = sf.U * m * sf.V
        k = len(sf.invariants)
        for i in range(nr):
            for j in range(nc):
                expected = sf.invariants[i] if (i == j and i < k) else R.zero()
                assert d.rows[i][j] == expected
        for a, b in zip(sf.invariants, sf.invariants[1:]):
            assert uni_divmod(b, a)[1].is_zero()
        assert sf.U.det().is_unit()
        assert sf.V.det().is_unit()
        assert sf.Uinv * sf.U == RingMatrix.identity(R, nr)


def test_smith_product_of_invariants_is_det():
    R = kt()
    rng = random.Random(29)
    for _ in range(6):
        m = random_matrix(R, rng, 3, deg=2)
        det = m.det()
        if det.is_zero():
            continue
        sf = smith_normal_form(m)
        prod = R.one()
        for d in sf.invariants:
            prod = prod * d
        assert prod == det.monic()


# ---------------------------------------------------------------------------
# field-level linear algebra

def test_field_rank_and_nullspace():
    F = GF(7)
    rows = [[1, 2, 3], [2, 4, 6], [0, 1, 1]]
    assert field_rank(F, rows) == 2
    null = field_nullspace(F, rows, 3)
    assert len(null) == 1
    v = null[0]
    for row in rows:
        acc = 0
        for a, b in zip(row, v):
            acc = F.add(acc, F.mul(a, b))
        assert acc == 0


def test_field_solve():
    F = GF(7)
    rows = [[1, 1], [1, 2]]
    sol = field_solve(F, rows, [3, 5])
    assert sol is not None
    assert F.add(sol[0], sol[1]) == 3
    assert F.add(sol[0], F.mul(2, sol[1])) == 5
    assert field_solve(F, [[1, 1], [2, 2]], [1, 3]) is None
