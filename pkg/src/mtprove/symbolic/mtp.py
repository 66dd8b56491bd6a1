"""Mixed trigonometric polynomials: finite sums of alpha * x^p * cos^q(x) * sin^r(x)."""

from __future__ import annotations

from fractions import Fraction
from math import comb

import mpmath

from ..exact.constexpr import pirat_from_json, pirat_text, pirat_to_json
from ..exact.domain import HALF_PI
from ..exact.pipoly import ONE, ZERO, PiRat
from .numeric import pirat_mp
from .polyx import PolyX


def _coerce(value) -> PiRat:
    return value if isinstance(value, PiRat) else PiRat.of(value)


class MTP:
    """Immutable MTP; terms are kept sorted by (p, q, r) with nonzero coefficients.

    Equality is structural. Two MTPs may agree as functions while differing
    structurally because of cos^2 + sin^2 = 1; use ``equivalent`` for that.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=()):
        acc = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for key, c in items:
            c = _coerce(c)
            if c.is_zero():
                continue
            prev = acc.get(key)
            acc[key] = c if prev is None else prev + c
        self.terms = tuple(sorted((k, c) for k, c in acc.items() if not c.is_zero()))
        self._hash = None

    @classmethod
    def _from_acc(cls, acc: dict) -> MTP:
        obj = cls.__new__(cls)
        obj.terms = tuple(sorted((k, c) for k, c in acc.items() if not c.is_zero()))
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, value) -> MTP:
        return cls([((0, 0, 0), value)])

    @classmethod
    def monomial(cls, coeff=1, p=0, q=0, r=0) -> MTP:
        return cls([((p, q, r), coeff)])

    @classmethod
    def from_polyx(cls, poly: PolyX, q: int = 0, r: int = 0) -> MTP:
        return cls([((k, q, r), c) for k, c in enumerate(poly.coeffs)])

    @classmethod
    def from_groups(cls, groups: dict) -> MTP:
        """Build from {(q, r): PolyX}."""
        return cls([((k, q, r), c) for (q, r), poly in groups.items()
                    for k, c in enumerate(poly.coeffs)])

    # -- inspection -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(k == (0, 0, 0) for k, _ in self.terms)

    def constant_value(self) -> PiRat:
        for k, c in self.terms:
            if k == (0, 0, 0):
                return c
        return ZERO

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def coefficient(self, p: int, q: int, r: int) -> PiRat:
        for k, c in self.terms:
            if k == (p, q, r):
                return c
        return ZERO

    def as_polyx(self):
        """The x-polynomial this MTP is, or None when trig factors occur."""
        if any(q or r for (_, q, r), _ in self.terms):
            return None
        if not self.terms:
            return PolyX()
        out = [ZERO] * (max(p for (p, _, _), _ in self.terms) + 1)
        for (p, _, _), c in self.terms:
            out[p] = c
        return PolyX(out)

    def trig_groups(self) -> dict:
        """{(q, r): PolyX} with the x-polynomial multiplying cos^q sin^r."""
        buckets = {}
        for (p, q, r), c in self.terms:
            buckets.setdefault((q, r), {})[p] = c
        out = {}
        for key in sorted(buckets):
            d = buckets[key]
            out[key] = PolyX([d.get(k, ZERO) for k in range(max(d) + 1)])
        return out

    def x_valuation(self) -> int:
        return min((p for (p, _, _), _ in self.terms), default=-1)

    def max_trig_degree(self) -> int:
        return max((q + r for (_, q, r), _ in self.terms), default=0)

    # -- arithmetic -----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, MTP):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.terms)
        return self._hash

    def __add__(self, other):
        other = _as_mtp(other)
        acc = dict(self.terms)
        for k, c in other.terms:
            prev = acc.get(k)
            acc[k] = c if prev is None else prev + c
        return MTP._from_acc(acc)

    __radd__ = __add__

    def __neg__(self):
        return MTP._from_acc({k: -c for k, c in self.terms})

    def __sub__(self, other):
        return self + (-_as_mtp(other))

    def __rsub__(self, other):
        return _as_mtp(other) - self

    def __mul__(self, other):
        if not isinstance(other, MTP):
            if isinstance(other, PolyX):
                other = MTP.from_polyx(other)
            else:
                return self.scale(other)
        acc = {}
        for (p1, q1, r1), a in self.terms:
            for (p2, q2, r2), b in other.terms:
                key = (p1 + p2, q1 + q2, r1 + r2)
                prod = a * b
                prev = acc.get(key)
                acc[key] = prod if prev is None else prev + prod
        return MTP._from_acc(acc)

    def __rmul__(self, other):
        if isinstance(other, PolyX):
            return MTP.from_polyx(other) * self
        return self.scale(other)

    def scale(self, value) -> MTP:
        value = _coerce(value)
        if value.is_zero():
            return MTP()
        if value == ONE:
            return self
        return MTP._from_acc({k: c * value for k, c in self.terms})

    def __pow__(self, n: int) -> MTP:
        if n < 0:
            raise ValueError("negative power of an MTP")
        result, base = MTP.constant(1), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift(self, dp: int = 0, dq: int = 0, dr: int = 0) -> MTP:
        """Multiply by x^dp cos^dq sin^dr (negative shifts must stay legal)."""
        out = {}
        for (p, q, r), c in self.terms:
            key = (p + dp, q + dq, r + dr)
            if min(key) < 0:
                raise ValueError("shift would create a negative exponent")
            out[key] = c
        return MTP._from_acc(out)

    def derivative(self) -> MTP:
        acc = {}

        def put(key, value):
            prev = acc.get(key)
            acc[key] = value if prev is None else prev + value

        for (p, q, r), c in self.terms:
            if p:
                put((p - 1, q, r), c * p)
            if q:
                put((p, q - 1, r + 1), -(c * q))
            if r:
                put((p, q + 1, r - 1), c * r)
        return MTP._from_acc(acc)

    # -- trigonometric rewriting ----------------------------------------------

    def cos_reduced(self) -> MTP:
        """Rewrite cos^2 = 1 - sin^2 until every cos power is 0 or 1 (a canonical form)."""
        return self._reduce(1)

    def sin_reduced(self) -> MTP:
        """Rewrite sin^2 = 1 - cos^2 until every sin power is 0 or 1 (a canonical form)."""
        return self._reduce(2)

    def _reduce(self, axis: int) -> MTP:
        acc = {}
        for (p, q, r), c in self.terms:
            e = q if axis == 1 else r
            half, rest = divmod(e, 2)
            for i in range(half + 1):
                coeff = c * (comb(half, i) * (-1) ** i)
                key = (p, rest, r + 2 * i) if axis == 1 else (p, q + 2 * i, rest)
                prev = acc.get(key)
                acc[key] = coeff if prev is None else prev + coeff
        return MTP._from_acc(acc)

    def homogenized(self):
        """Pad each term with (cos^2 + sin^2)^k to a common trig degree, or None
        when the trig degrees have mixed parity."""
        if not self.terms:
            return self
        degrees = {q + r for (_, q, r), _ in self.terms}
        if len({d % 2 for d in degrees}) > 1:
            return None
        top = max(degrees)
        acc = {}
        for (p, q, r), c in self.terms:
            k = (top - q - r) // 2
            for i in range(k + 1):
                key = (p, q + 2 * i, r + 2 * (k - i))
                coeff = c * comb(k, i)
                prev = acc.get(key)
                acc[key] = coeff if prev is None else prev + coeff
        return MTP._from_acc(acc)

    def canonical(self) -> MTP:
        return self.cos_reduced()

    def is_zero_function(self) -> bool:
        return self.cos_reduced().is_zero()

    def equivalent(self, other) -> bool:
        return (self - _as_mtp(other)).is_zero_function()

    def divide_power(self, kind: str, k: int = 1):
        """Exact quotient by x^k, sin^k or cos^k as functions, or None.

        Divisibility by sin is read off the cos-reduced form and divisibility
        by cos off the sin-reduced form, where the representation is unique.
        """
        if k == 0:
            return self
        if kind == "x":
            form, axis = self.cos_reduced(), 0
        elif kind == "sin":
            form, axis = self.cos_reduced(), 2
        elif kind == "cos":
            form, axis = self.sin_reduced(), 1
        else:
            raise ValueError(kind)
        if any(key[axis] < k for key, _ in form.terms):
            return None
        delta = [0, 0, 0]
        delta[axis] = -k
        return form.shift(*delta)

    def divide_polyx(self, g: PolyX):
        """Exact quotient by the x-polynomial g as functions, or None."""
        form = self.cos_reduced()
        groups = {}
        for key, poly in form.trig_groups().items():
            quot = poly.exact_div(g)
            if quot is None:
                return None
            groups[key] = quot
        return MTP.from_groups(groups)

    # -- substitution and evaluation -------------------------------------------

    def reflect(self) -> MTP:
        """Substitute x -> pi/2 - x: cos and sin swap, powers of x re-expand."""
        inner = PolyX((HALF_PI, -ONE))
        powers = {}
        acc = {}
        for (p, q, r), c in self.terms:
            if p not in powers:
                powers[p] = inner ** p
            for k, a in enumerate(powers[p].coeffs):
                key = (k, r, q)
                prod = a * c
                prev = acc.get(key)
                acc[key] = prod if prev is None else prev + prod
        return MTP._from_acc(acc)

    def mp(self, x):
        s, co = mpmath.sin(x), mpmath.cos(x)
        return mpmath.fsum(pirat_mp(c) * x ** p * co ** q * s ** r for (p, q, r), c in self.terms)

    # -- text and JSON ----------------------------------------------------------

    def __repr__(self):
        return f"MTP({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (p, q, r), c in self.terms:
            factors = []
            if p:
                factors.append("x" if p == 1 else f"x^{p}")
            if q:
                factors.append("cos(x)" if q == 1 else f"cos(x)^{q}")
            if r:
                factors.append("sin(x)" if r == 1 else f"sin(x)^{r}")
            coeff = f"({pirat_text(c)})"
            if factors and c == ONE:
                parts.append("*".join(factors))
            else:
                parts.append("*".join([coeff] + factors))
        return " + ".join(parts)

    def to_json(self):
        return [{"p": p, "q": q, "r": r, "coeff": pirat_to_json(c)} for (p, q, r), c in self.terms]

    @classmethod
    def from_json(cls, data) -> MTP:
        return cls([((int(t["p"]), int(t["q"]), int(t["r"])), pirat_from_json(t["coeff"]))
                    for t in data])


def _as_mtp(value) -> MTP:
    if isinstance(value, MTP):
        return value
    if isinstance(value, PolyX):
        return MTP.from_polyx(value)
    if isinstance(value, (int, Fraction, PiRat)):
        return MTP.constant(value)
    raise TypeError(f"cannot use {type(value).__name__} as an MTP")


X = MTP.monomial(1, 1, 0, 0)
COS = MTP.monomial(1, 0, 1, 0)
SIN = MTP.monomial(1, 0, 0, 1)
