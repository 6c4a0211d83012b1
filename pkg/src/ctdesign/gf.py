"""Finite fields GF(p^a) as explicit addition and multiplication tables.

Element ``i`` is the polynomial whose base-p digits are the coefficients
of 1, x, x^2, ... ; x itself (element ``p``) is primitive for every
bundled polynomial, so ``field.power(i)`` enumerates the multiplicative
group in a fixed order.
"""
from __future__ import annotations

from functools import lru_cache
from importlib import resources

import numpy as np


def _factor_prime_power(q: int) -> tuple[int, int]:
    p = next(d for d in range(2, q + 1) if q % d == 0)
    a, n = 0, q
    while n % p == 0:
        n //= p
        a += 1
    if n != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, a


def is_prime_power(q: int) -> bool:
    if q < 2:
        return False
    try:
        _factor_prime_power(q)
    except ValueError:
        return False
    return True


def prime_power(q: int) -> tuple[int, int]:
    """(p, a) with q = p**a."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    return _factor_prime_power(q)


@lru_cache(maxsize=None)
def _poly_table() -> dict[int, tuple[int, ...]]:
    text = resources.files("ctdesign").joinpath("data/primitive_polys.txt").read_text()
    out = {}
    for line in text.splitlines():
        line = line.split("#", 1)[0].split()
        if line:
            q, _, _, *coeffs = map(int, line)
            out[q] = tuple(coeffs)
    return out


class FiniteField:
    def __init__(self, q: int):
        p, a = prime_power(q)
        self.q, self.p, self.a = q, p, a
        if a == 1:
            self.add = np.fromfunction(lambda i, j: (i + j) % p, (q, q), dtype=np.int64)
            self.mul = np.fromfunction(lambda i, j: (i * j) % p, (q, q), dtype=np.int64)
            self.poly: tuple[int, ...] = ()
            self.generator = next(g for g in range(1, p) if self._order_mod(g) == p - 1) if p > 2 else 1
        else:
            try:
                self.poly = _poly_table()[q]
            except KeyError:
                raise ValueError(f"no bundled primitive polynomial for q={q}") from None
            self.add, self.mul = self._build_tables()
            self.generator = p
        self.neg = np.array([int(np.nonzero(self.add[x] == 0)[0][0]) for x in range(q)])
        self.inv = np.zeros(q, dtype=np.int64)
        for x in range(1, q):
            self.inv[x] = int(np.nonzero(self.mul[x] == 1)[0][0])
        self._powers = [1]
        for _ in range(q - 2):
            self._powers.append(int(self.mul[self._powers[-1], self.generator]))
        if len(set(self._powers)) != q - 1:
            raise ValueError(f"generator of GF({q}) is not primitive")

    def _order_mod(self, g: int) -> int:
        n, x = 1, g % self.p
        while x != 1:
            x = x * g % self.p
            n += 1
        return n

    def _digits(self, x: int) -> list[int]:
        return [(x // self.p**i) % self.p for i in range(self.a)]

    def _value(self, digits) -> int:
        return sum(int(c) * self.p**i for i, c in enumerate(digits))

    def _build_tables(self):
        p, a, q = self.p, self.a, self.q
        add = np.zeros((q, q), dtype=np.int64)
        mul = np.zeros((q, q), dtype=np.int64)
        digits = [self._digits(x) for x in range(q)]
        for x in range(q):
            for y in range(q):
                add[x, y] = self._value([(s + t) % p for s, t in zip(digits[x], digits[y])])
                prod = [0] * (2 * a - 1)
                for i, s in enumerate(digits[x]):
                    for j, t in enumerate(digits[y]):
                        prod[i + j] = (prod[i + j] + s * t) % p
                for deg in range(2 * a - 2, a - 1, -1):
                    c = prod[deg]
                    if c:
                        prod[deg] = 0
                        for i, pc in enumerate(self.poly):
                            prod[deg - a + i] = (prod[deg - a + i] - c * pc) % p
                mul[x, y] = self._value(prod[:a])
        return add, mul

    def power(self, i: int) -> int:
        """generator ** i."""
        return self._powers[i % (self.q - 1)]

    def frobenius(self, x: int) -> int:
        y = 1
        for _ in range(self.p):
            y = int(self.mul[y, x])
        return y

    def subfield(self, order: int) -> list[int]:
        """Elements of the subfield of the given order."""
        if (self.q - 1) % (order - 1):
            raise ValueError(f"GF({self.q}) has no subfield of order {order}")
        step = (self.q - 1) // (order - 1)
        return sorted([0] + [self.power(step * i) for i in range(order - 1)])

    def __repr__(self) -> str:
        return f"GF({self.q})"


@lru_cache(maxsize=None)
def field(q: int) -> FiniteField:
    return FiniteField(q)
