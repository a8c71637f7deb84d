"""Exact coefficient fields: the rationals and prime fields GF(p)."""

from __future__ import annotations

import operator
from fractions import Fraction


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Field:
    """A coefficient field with characteristic 0 (QQ) or a prime p.

    Elements of QQ are :class:`fractions.Fraction`; elements of GF(p) are
    plain ints in ``range(p)``. The arithmetic callables ``add``, ``sub``,
    ``mul`` and ``neg`` are bound once so hot loops can use them as locals.
    """

    __slots__ = ("characteristic", "add", "sub", "mul", "neg", "zero", "one")

    def __init__(self, characteristic: int = 0):
        if characteristic and not _is_prime(characteristic):
            raise ValueError(f"GF({characteristic}): characteristic must be prime")
        self.characteristic = characteristic
        if characteristic == 0:
            self.add = operator.add
            self.sub = operator.sub
            self.mul = operator.mul
            self.neg = operator.neg
            self.zero = Fraction(0)
            self.one = Fraction(1)
        else:
            p = characteristic
            self.add = lambda a, b: (a + b) % p
            self.sub = lambda a, b: (a - b) % p
            self.mul = lambda a, b: (a * b) % p
            self.neg = lambda a: (-a) % p
            self.zero = 0
            self.one = 1

    def __call__(self, value):
        p = self.characteristic
        if p == 0:
            if isinstance(value, Fraction):
                return value
            return Fraction(value)
        if isinstance(value, Fraction):
            den = value.denominator % p
            if den == 0:
                raise ZeroDivisionError(f"denominator {value.denominator} vanishes in GF({p})")
            return (value.numerator * pow(den, -1, p)) % p
        return int(value) % p

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.characteristic == 0:
            return 1 / a
        return pow(a, -1, self.characteristic)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def random_element(self, rng, bound: int = 9):
        """A small random element; uniform over the field for GF(p)."""
        if self.characteristic:
            return rng.randrange(self.characteristic)
        return Fraction(rng.randint(-bound, bound))

    def to_str(self, a) -> str:
        if self.characteristic:
            # symmetric representative reads better
            p = self.characteristic
            return str(a - p if a > p // 2 else a)
        return str(a)

    def __eq__(self, other):
        return isinstance(other, Field) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("Field", self.characteristic))

    def __repr__(self):
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)
