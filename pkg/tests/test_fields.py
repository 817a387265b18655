import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from monadkit.fields import Field


def test_rational_field_basics():
    q = Field.QQ()
    assert not q.is_finite
    assert q.of(3) == Fraction(3)
    assert q.parse("-7/2") == Fraction(-7, 2)
    assert q.format(Fraction(5, 3)) == "5/3"
    assert q.zero + q.one == q.one
    assert Field.from_json(q.to_json()) == q


def test_prime_field_basics():
    f = Field.GF(7)
    assert f.is_finite
    a, b = f.of(5), f.of(4)
    assert a + b == f.of(2)
    assert a * b == f.of(6)
    assert a / b == f.of(3)  # 4·3 = 12 = 5
    assert -a == f.of(2)
    assert a ** 3 == f.of(6)
    assert f.parse(f.format(a)) == a
    assert Field.from_json(f.to_json()) == f


def test_gf_rejects_composite():
    with pytest.raises(ValueError):
        Field.GF(6)


def test_random_nonzero_is_nonzero():
    rng = random.Random(0)
    for field in (Field.QQ(), Field.GF(3)):
        for _ in range(50):
            assert field.random_nonzero(rng) != field.zero


@given(st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50))
def test_gf_ring_axioms(a, b, c):
    f = Field.GF(11)
    x, y, z = f.of(a), f.of(b), f.of(c)
    assert x * (y + z) == x * y + x * z
    assert (x + y) + z == x + (y + z)
    assert x * y == y * x
    if y != f.zero:
        assert (x / y) * y == x
