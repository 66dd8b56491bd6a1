"""Closed rational intervals guaranteed to contain an exact real value."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor

from .sign import Sign


def _q(value) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


@dataclass(frozen=True)
class Enclosure:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", _q(self.lo))
        object.__setattr__(self, "hi", _q(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty enclosure [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, value) -> Enclosure:
        value = _q(value)
        return cls(value, value)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def sign(self):
        """Certified sign, or None when the enclosure straddles zero."""
        if self.lo > 0:
            return Sign.POSITIVE
        if self.hi < 0:
            return Sign.NEGATIVE
        if self.lo == self.hi == 0:
            return Sign.ZERO
        return None

    def contains(self, value) -> bool:
        return self.lo <= value <= self.hi

    __contains__ = contains

    def subset_of(self, other: Enclosure) -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def __add__(self, other):
        other = _lift(other)
        return Enclosure(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self):
        return Enclosure(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        other = _lift(other)
        products = (self.lo * other.lo, self.lo * other.hi,
                    self.hi * other.lo, self.hi * other.hi)
        return Enclosure(min(products), max(products))

    __rmul__ = __mul__

    def reciprocal(self) -> Enclosure:
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("enclosure contains zero")
        return Enclosure(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other):
        return self * _lift(other).reciprocal()

    def __rtruediv__(self, other):
        return _lift(other) * self.reciprocal()

    def __pow__(self, n: int) -> Enclosure:
        if n < 0:
            return self.reciprocal() ** (-n)
        if n == 0:
            return Enclosure.point(1)
        lo, hi = self.lo ** n, self.hi ** n
        if n % 2 == 1 or self.lo >= 0:
            return Enclosure(min(lo, hi), max(lo, hi))
        if self.hi <= 0:
            return Enclosure(hi, lo)
        return Enclosure(Fraction(0), max(lo, hi))

    def rounded(self, denominator: int) -> Enclosure:
        """Outward rounding to the grid 1/denominator."""
        lo = Fraction(floor(self.lo * denominator), denominator)
        hi = Fraction(ceil(self.hi * denominator), denominator)
        return Enclosure(lo, hi)

    def __str__(self):
        return f"[{self.lo}, {self.hi}]"


def _lift(value) -> Enclosure:
    if isinstance(value, Enclosure):
        return value
    return Enclosure.point(value)
