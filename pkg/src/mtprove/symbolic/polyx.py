"""Univariate polynomials in x with coefficients in Q(pi)."""

from __future__ import annotations

from fractions import Fraction

from ..exact.constexpr import Lit, pirat_from_json, pirat_text, pirat_to_json
from ..exact.pipoly import ONE, ZERO, PiRat
from .numeric import pirat_mp


def _coerce(value) -> PiRat:
    return value if isinstance(value, PiRat) else PiRat.of(value)


class PolyX:
    """Coefficient ``k`` multiplies ``x**k``; the zero polynomial has degree -1."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs=()):
        items = [_coerce(c) for c in coeffs]
        while items and items[-1].is_zero():
            items.pop()
        self.coeffs = tuple(items)
        self._hash = None

    @classmethod
    def x(cls) -> PolyX:
        return cls((ZERO, ONE))

    @classmethod
    def constant(cls, value) -> PolyX:
        return cls((value,))

    @classmethod
    def monomial(cls, coeff, k: int) -> PolyX:
        return cls([ZERO] * k + [coeff])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def coefficient(self, k: int) -> PiRat:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    def leading(self) -> PiRat:
        return self.coeffs[-1] if self.coeffs else ZERO

    def constant_coefficients(self):
        return [Lit(c) for c in self.coeffs]

    def valuation(self) -> int:
        """Exponent of the lowest nonzero term (-1 for zero)."""
        for k, c in enumerate(self.coeffs):
            if not c.is_zero():
                return k
        return -1

    def shift_down(self, k: int) -> PolyX:
        if any(not c.is_zero() for c in self.coeffs[:k]):
            raise ValueError("polynomial is not divisible by that power of x")
        return PolyX(self.coeffs[k:])

    def shift_up(self, k: int) -> PolyX:
        if self.is_zero():
            return self
        return PolyX((ZERO,) * k + self.coeffs)

    # -- arithmetic -----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, PolyX):
            try:
                other = PolyX.constant(other)
            except TypeError:
                return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def __add__(self, other):
        other = _as_polyx(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return PolyX([self.coefficient(k) + other.coefficient(k) for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return PolyX([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-_as_polyx(other))

    def __rsub__(self, other):
        return _as_polyx(other) - self

    def __mul__(self, other):
        if not isinstance(other, PolyX):
            return self.scale(other)
        if self.is_zero() or other.is_zero():
            return PolyX()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return PolyX(out)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, value) -> PolyX:
        value = _coerce(value)
        if value.is_zero():
            return PolyX()
        return PolyX([c * value for c in self.coeffs])

    def __truediv__(self, value):
        return self.scale(ONE / _coerce(value))

    def __pow__(self, n: int) -> PolyX:
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result, base = PolyX.constant(1), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def divmod(self, other: PolyX):
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        lead = other.leading()
        dq = other.degree
        quot = [ZERO] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k]
            if c.is_zero():
                continue
            f = c / lead
            quot[k - dq] = f
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    rem[k - dq + j] = rem[k - dq + j] - f * b
        return PolyX(quot), PolyX(rem[:dq] if dq > 0 else [])

    def exact_div(self, other: PolyX):
        """Quotient when ``other`` divides ``self`` exactly, else None."""
        q, r = self.divmod(other)
        return q if r.is_zero() else None

    def derivative(self) -> PolyX:
        return PolyX([c * k for k, c in enumerate(self.coeffs)][1:])

    def evaluate(self, value) -> PiRat:
        value = _coerce(value)
        total = ZERO
        for c in reversed(self.coeffs):
            total = total * value + c
        return total

    def compose(self, inner: PolyX) -> PolyX:
        total = PolyX()
        for c in reversed(self.coeffs):
            total = total * inner + PolyX.constant(c)
        return total

    def mp(self, x):
        total = 0
        for c in reversed(self.coeffs):
            total = total * x + pirat_mp(c)
        return total

    # -- text and JSON --------------------------------------------------------

    def __repr__(self):
        return f"PolyX({self})"

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c.is_zero():
                continue
            power = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            coeff = pirat_text(c)
            if not power:
                parts.append(f"({coeff})")
            elif c == ONE:
                parts.append(power)
            else:
                parts.append(f"({coeff})*{power}")
        return " + ".join(parts)

    def to_json(self):
        return [pirat_to_json(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data) -> PolyX:
        return cls([pirat_from_json(c) for c in data])


def _as_polyx(value) -> PolyX:
    if isinstance(value, PolyX):
        return value
    if isinstance(value, (int, Fraction, PiRat)):
        return PolyX.constant(value)
    raise TypeError(f"cannot use {type(value).__name__} as a polynomial")


X = PolyX.x()
