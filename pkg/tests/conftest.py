import random

import pytest

from specdiv.fields import GF
from specdiv.polynomials import Poly, Ring
from specdiv.cover import CoverChart


@pytest.fixture
def F7():
    return GF(7)


@pytest.fixture
def kt(F7):
    return Ring(F7, ["t"])


@pytest.fixture
def double_cover(kt):
    """S = F7[t][x]/(x^2 - t)."""
    return CoverChart.monic(kt, "x", ["0", "-t"])


@pytest.fixture
def tacnode():
    """A = k[x,y]/(y^2 - x^4) free of rank 2 over B = k[s,t]/(t^2 - s^2)."""
    F7 = GF(7)
    base = Ring(F7, ["s", "t"]).quotient(["t^2 - s^2"])
    ring = Ring(F7, ["x", "y"]).quotient(["y^2 - x^4"])
    return CoverChart.free(base, ring, ["1", "x"], {"s": "x^2", "t": "y"})


@pytest.fixture
def rng():
    return random.Random(987123)


def random_poly(ring, rng, max_deg, allow_zero=True):
    """Dense random univariate polynomial of degree <= max_deg."""
    terms = {}
    for d in range(max_deg + 1):
        c = ring.field.random(rng)
        if c != ring.field.zero:
            terms[(d,)] = c
    p = Poly(ring, terms, reduce=False)
    if not allow_zero and p.is_zero():
        return ring.one()
    return p


def random_monic(ring, rng, deg):
    """Random monic univariate polynomial of exact degree deg."""
    terms = {(deg,): ring.field.one}
    for d in range(deg):
        c = ring.field.random(rng)
        if c != ring.field.zero:
            terms[(d,)] = c
    return Poly(ring, terms, reduce=False)


def random_cover_element(cover, rng, max_deg=2):
    """Random element of the cover ring, via basis coordinates."""
    total = cover.ring.zero()
    for b in cover.basis:
        c = random_poly(cover.base, rng, max_deg)
        total = total + cover.to_cover(c) * b
    return total
