from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from specdiv.fields import GF, QQ, is_prime


def test_primality_check_rejects_composites():
    for n in (0, 1, 4, 9, 91, 561, 7 * 10007):
        assert not is_prime(n)
    for n in (2, 3, 7, 10007, 2 ** 31 - 1):
        assert is_prime(n)


def test_prime_field_requires_prime():
    with pytest.raises(ValueError):
        GF(10)


def test_basic_arithmetic_mod7():
    F = GF(7)
    assert F.add(5, 4) == 2
    assert F.mul(3, 5) == 1
    assert F.inv(3) == 5
    assert F.neg(2) == 5
    assert F.coerce(-1) == 6
    assert F.coerce(Fraction(1, 2)) == 4  # 2 * 4 = 1 mod 7


def test_rational_field():
    assert QQ.add(Fraction(1, 2), Fraction(1, 3)) == Fraction(5, 6)
    assert QQ.inv(Fraction(3, 4)) == Fraction(4, 3)
    with pytest.raises(ZeroDivisionError):
        QQ.inv(Fraction(0))


@given(st.integers(), st.integers(), st.integers())
def test_field_ring_axioms_mod_10007(a, b, c):
    F = GF(10007)
    a, b, c = F.coerce(a), F.coerce(b), F.coerce(c)
    assert F.add(a, F.add(b, c)) == F.add(F.add(a, b), c)
    assert F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


@given(st.integers(min_value=1, max_value=10006))
def test_inverses_mod_10007(a):
    F = GF(10007)
    assert F.mul(a, F.inv(a)) == 1
