from __future__ import annotations

import pytest

from ctdesign.gf import field, is_prime_power, prime_power

ORDERS = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16]


@pytest.mark.parametrize("q", ORDERS)
def test_field_axioms(q):
    F = field(q)
    xs = range(q)
    for a in xs:
        assert F.add[a, 0] == a and F.mul[a, 1] == a
        assert F.add[a, F.neg[a]] == 0
        if a:
            assert F.mul[a, F.inv[a]] == 1
        for b in xs:
            assert F.add[a, b] == F.add[b, a]
            assert F.mul[a, b] == F.mul[b, a]
    # distributivity on a sample
    for a in xs:
        for b in xs:
            for c in (0, 1, q - 1):
                assert F.mul[a, F.add[b, c]] == F.add[F.mul[a, b], F.mul[a, c]]


@pytest.mark.parametrize("q", ORDERS)
def test_multiplicative_group_is_cyclic(q):
    F = field(q)
    assert sorted(F.power(i) for i in range(q - 1)) == list(range(1, q))


def test_frobenius_fixes_prime_field():
    F = field(16)
    assert [x for x in range(16) if F.frobenius(x) == x] == [0, 1]
    assert len(F.subfield(4)) == 4


def test_prime_powers():
    assert prime_power(16) == (2, 4)
    assert is_prime_power(27) and not is_prime_power(12) and not is_prime_power(1)
    with pytest.raises(ValueError):
        field(6)
