"""Polynomials and rational functions in pi with rational coefficients.

A ``PiPoly`` stores an integer coefficient vector together with one positive
common denominator, which keeps multiplication and gcd on machine-friendly
Python ints.  ``PiRat`` is the field of fractions; it is kept reduced with a
primitive denominator of positive leading coefficient, so equal values have
equal representations.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

from ..errors import UndecidableAtBudget
from .enclosure import Enclosure
from .pi import max_depth, pi_enclosure
from .sign import Sign


def _strip(coeffs):
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


def _content(ints):
    g = 0
    for c in ints:
        g = gcd(g, c)
        if g == 1:
            break
    return g


class PiPoly:
    """Polynomial in pi; index of a coefficient is the power of pi."""

    __slots__ = ("_c", "_d", "_hash")

    def __init__(self, coefficients=()):
        fracs = [Fraction(c) for c in coefficients]
        den = 1
        for f in fracs:
            den = den * f.denominator // gcd(den, f.denominator)
        ints = [f.numerator * (den // f.denominator) for f in fracs]
        self._set(ints, den)

    @classmethod
    def _raw(cls, ints, den=1):
        obj = cls.__new__(cls)
        obj._set(ints, den)
        return obj

    def _set(self, ints, den):
        ints = _strip(ints)
        if not ints:
            den = 1
        else:
            g = gcd(_content(ints), den)
            if g != 1:
                ints = tuple(c // g for c in ints)
                den //= g
        self._c = ints
        self._d = den
        self._hash = None

    # -- construction -------------------------------------------------------

    @classmethod
    def constant(cls, value) -> PiPoly:
        value = Fraction(value)
        return cls._raw((value.numerator,), value.denominator)

    @classmethod
    def pi(cls) -> PiPoly:
        return cls._raw((0, 1))

    # -- inspection ---------------------------------------------------------

    @property
    def coefficients(self):
        return tuple(Fraction(c, self._d) for c in self._c)

    @property
    def int_coefficients(self):
        return self._c

    @property
    def denominator(self):
        return self._d

    @property
    def degree(self) -> int:
        return len(self._c) - 1

    def is_zero(self) -> bool:
        return not self._c

    def is_constant(self) -> bool:
        return len(self._c) <= 1

    def constant_value(self) -> Fraction:
        return Fraction(self._c[0], self._d) if self._c else Fraction(0)

    @property
    def leading(self) -> Fraction:
        return Fraction(self._c[-1], self._d)

    def __eq__(self, other):
        if not isinstance(other, PiPoly):
            if isinstance(other, (int, Fraction)):
                return self == PiPoly.constant(other)
            return NotImplemented
        return self._c == other._c and self._d == other._d

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._c, self._d))
        return self._hash

    def __repr__(self):
        return f"PiPoly({[str(c) for c in self.coefficients]})"

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for k in range(len(self._c) - 1, -1, -1):
            c = Fraction(self._c[k], self._d)
            if c == 0:
                continue
            if k == 0:
                mono = str(abs(c))
            else:
                head = "" if abs(c) == 1 else f"{abs(c)}*"
                mono = head + ("pi" if k == 1 else f"pi^{k}")
            parts.append(("-" if c < 0 else "+", mono))
        sign, first = parts[0]
        text = ("-" if sign == "-" else "") + first
        for sign, mono in parts[1:]:
            text += f" {sign} {mono}"
        return text

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        a, b = self._c, other._c
        da, db = self._d, other._d
        if da == db:
            n = max(len(a), len(b))
            out = [0] * n
            for i, c in enumerate(a):
                out[i] = c
            for i, c in enumerate(b):
                out[i] += c
            return PiPoly._raw(out, da)
        g = gcd(da, db)
        ma, mb = db // g, da // g
        n = max(len(a), len(b))
        out = [0] * n
        for i, c in enumerate(a):
            out[i] = c * ma
        for i, c in enumerate(b):
            out[i] += c * mb
        return PiPoly._raw(out, da * ma)

    __radd__ = __add__

    def __neg__(self):
        return PiPoly._raw(tuple(-c for c in self._c), self._d)

    def __sub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return PiPoly._raw(_int_mul(self._c, other._c), self._d * other._d)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = PiPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, value) -> PiPoly:
        value = Fraction(value)
        return PiPoly._raw(tuple(c * value.numerator for c in self._c),
                           self._d * value.denominator)

    def divmod(self, other: PiPoly):
        """Euclidean division over the rationals."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.coefficients)
        div = other.coefficients
        lead = div[-1]
        dq = len(rem) - len(div)
        if dq < 0:
            return PiPoly(), self
        quot = [Fraction(0)] * (dq + 1)
        for k in range(dq, -1, -1):
            c = rem[k + len(div) - 1] / lead
            quot[k] = c
            if c:
                for i, d in enumerate(div):
                    rem[k + i] -= c * d
        return PiPoly(quot), PiPoly(rem[:len(div) - 1])

    def primitive(self) -> PiPoly:
        """Integer-coefficient associate with content 1 and positive leading coefficient."""
        if not self._c:
            return self
        g = _content(self._c)
        if self._c[-1] < 0:
            g = -g
        return PiPoly._raw(tuple(c // g for c in self._c), 1)

    def content(self) -> Fraction:
        """Rational factor with ``self == content() * primitive()``."""
        if not self._c:
            return Fraction(0)
        g = _content(self._c)
        if self._c[-1] < 0:
            g = -g
        return Fraction(g, self._d)

    def exact_quotient(self, other: PiPoly) -> PiPoly:
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q

    # -- evaluation ---------------------------------------------------------

    def evaluate(self, value: Fraction) -> Fraction:
        acc = 0
        value = Fraction(value)
        for c in reversed(self._c):
            acc = acc * value + c
        return Fraction(acc) / self._d

    def enclose(self, depth: int) -> Enclosure:
        return self.enclose_with(pi_enclosure(depth))

    def enclose_with(self, enc: Enclosure) -> Enclosure:
        """Termwise bracket; valid because the enclosure of pi is positive."""
        n = len(self._c)
        if n == 0:
            return Enclosure.point(0)
        top = n - 1
        ln, ld = enc.lo.numerator, enc.lo.denominator
        hn, hd = enc.hi.numerator, enc.hi.denominator
        # sums over a common denominator den^top, split by coefficient sign
        pos_lo = pos_hi = neg_lo = neg_hi = 0
        lp = hp = 1
        ldp = [1] * n
        hdp = [1] * n
        for k in range(1, n):
            ldp[k] = ldp[k - 1] * ld
            hdp[k] = hdp[k - 1] * hd
        for k, c in enumerate(self._c):
            if c:
                a = c * lp * ldp[top - k]
                b = c * hp * hdp[top - k]
                if c > 0:
                    pos_lo += a
                    pos_hi += b
                else:
                    neg_lo += a
                    neg_hi += b
            lp *= ln
            hp *= hn
        lo = Fraction(pos_lo, ldp[top]) + Fraction(neg_hi, hdp[top])
        hi = Fraction(pos_hi, hdp[top]) + Fraction(neg_lo, ldp[top])
        return Enclosure(lo / self._d, hi / self._d)

    def sign(self, budget: int = 4, start_depth: int = 8) -> Sign:
        if not self._c:
            return Sign.ZERO
        if len(self._c) == 1:
            return Sign.of(self._c[0])
        return _poly_sign(self, budget, start_depth)

    def derivative(self) -> PiPoly:
        return PiPoly._raw(tuple(k * c for k, c in enumerate(self._c))[1:], self._d)


def _as_poly(value):
    if isinstance(value, PiPoly):
        return value
    if isinstance(value, (int, Fraction)):
        return PiPoly.constant(value)
    return None


def _int_mul(a, b):
    if not a or not b:
        return ()
    if len(a) == 1:
        c = a[0]
        return tuple(c * x for x in b)
    if len(b) == 1:
        c = b[0]
        return tuple(c * x for x in a)
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


@lru_cache(maxsize=65536)
def _poly_sign_cached(ints, den, budget, start_depth):
    p = PiPoly._raw(ints, den)
    depth = start_depth
    for _ in range(budget):
        s = p.enclose(depth).sign()
        if s is not None:
            return s
        if depth >= max_depth():
            break
        depth *= 2
    s = p.enclose(max_depth()).sign()
    if s is not None:
        return s
    raise UndecidableAtBudget(f"cannot decide sign of {p}")


def _poly_sign(p, budget, start_depth):
    return _poly_sign_cached(p._c, p._d, budget, start_depth)


def _int_prem_gcd(a, b):
    """Primitive gcd of two integer polynomials (primitive PRS)."""
    a = _prim_ints(a)
    b = _prim_ints(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _int_prem(a, b)
        a, b = b, _prim_ints(r)
    return a


def _prim_ints(c):
    c = _strip(c)
    if not c:
        return c
    g = _content(c)
    if c[-1] < 0:
        g = -g
    if g == 1:
        return c
    return tuple(x // g for x in c)


def _int_prem(a, b):
    """Pseudo-remainder of a by b over the integers."""
    r = list(a)
    lb = b[-1]
    db = len(b) - 1
    while len(r) - 1 >= db and r:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [x * lb for x in r]
        for i, c in enumerate(b):
            r[shift + i] -= lr * c
        r = list(_strip(r))
        if r:
            g = _content(r)
            if g > 1:
                r = [x // g for x in r]
    return tuple(r)


@lru_cache(maxsize=65536)
def _gcd_cached(a, b):
    return _int_prem_gcd(a, b)


def poly_gcd(a: PiPoly, b: PiPoly) -> PiPoly:
    """Primitive gcd with positive leading coefficient (1 when coprime)."""
    if a.is_zero():
        return b.primitive() if not b.is_zero() else PiPoly.constant(1)
    if b.is_zero():
        return a.primitive()
    if a.is_constant() or b.is_constant():
        return PiPoly.constant(1)
    ac, bc = a.int_coefficients, b.int_coefficients
    # common power-of-pi factor, the most frequent case
    va = next(i for i, c in enumerate(ac) if c)
    vb = next(i for i, c in enumerate(bc) if c)
    v = min(va, vb)
    ac, bc = ac[va:], bc[vb:]
    if len(ac) == 1 or len(bc) == 1:
        g = (1,)
    else:
        key = (ac, bc) if ac <= bc else (bc, ac)
        g = _gcd_cached(*key)
    return PiPoly._raw((0,) * v + tuple(g), 1)


class PiRat:
    """Element of Q(pi): ``num / den`` in lowest terms."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None):
        num = _as_poly(num) if not isinstance(num, PiPoly) else num
        if den is None:
            self._set(num, _ONE)
            return
        den = _as_poly(den) if not isinstance(den, PiPoly) else den
        if den.is_zero():
            raise ZeroDivisionError("PiRat with zero denominator")
        self._set_reduced(num, den)

    @classmethod
    def _make(cls, num, den):
        obj = cls.__new__(cls)
        obj._set_reduced(num, den)
        return obj

    def _set(self, num, den):
        self.num = num
        self.den = den
        self._hash = None

    def _set_reduced(self, num, den):
        if num.is_zero():
            self._set(num, _ONE)
            return
        if den.is_constant():
            self._set(num.scale(1 / den.constant_value()), _ONE)
            return
        g = poly_gcd(num, den)
        if not g.is_constant():
            num = num.exact_quotient(g)
            den = den.exact_quotient(g)
        c = den.content()
        self._set(num.scale(1 / c), den.scale(1 / c))
        if self.den.is_constant():
            self._set(self.num.scale(1 / self.den.constant_value()), _ONE)

    # -- construction -------------------------------------------------------

    @classmethod
    def of(cls, value) -> PiRat:
        if isinstance(value, PiRat):
            return value
        if isinstance(value, PiPoly):
            return cls(value)
        return cls(PiPoly.constant(value))

    @classmethod
    def pi(cls) -> PiRat:
        return cls(PiPoly.pi())

    # -- inspection ---------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_rational(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.num.constant_value()

    def is_poly(self) -> bool:
        return self.den.is_constant()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PiRat.of(other)
        if not isinstance(other, PiRat):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self):
        return f"PiRat({self})"

    def __str__(self):
        if self.den.is_constant():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def sign(self, budget: int = 4) -> Sign:
        return self.num.sign(budget) * self.den.sign(budget)

    def enclose(self, depth: int) -> Enclosure:
        n = self.num.enclose(depth)
        if self.den.is_constant():
            return n
        return n / self.den.enclose(depth)

    def __float__(self):
        e = self.enclose(6)
        return float(e.mid)

    # -- field operations ---------------------------------------------------

    def __add__(self, other):
        other = _as_rat(other)
        if other is None:
            return NotImplemented
        if self.den is _ONE or self.den == _ONE:
            if other.den == _ONE:
                return PiRat._poly(self.num + other.num)
            return PiRat._make(self.num * other.den + other.num, other.den)
        if other.den == _ONE:
            return PiRat._make(self.num + other.num * self.den, self.den)
        if self.den == other.den:
            return PiRat._make(self.num + other.num, self.den)
        return PiRat._make(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        obj = PiRat.__new__(PiRat)
        obj._set(-self.num, self.den)
        return obj

    def __sub__(self, other):
        other = _as_rat(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _as_rat(other) - self

    def __mul__(self, other):
        other = _as_rat(other)
        if other is None:
            return NotImplemented
        if self.num.is_zero() or other.num.is_zero():
            return ZERO
        if self.den == _ONE and other.den == _ONE:
            return PiRat._poly(self.num * other.num)
        if self.num.is_constant():
            return PiRat._scaled(other, self.num.constant_value(), self.den)
        if other.num.is_constant():
            return PiRat._scaled(self, other.num.constant_value(), other.den)
        return PiRat._make(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    @classmethod
    def _poly(cls, num):
        obj = cls.__new__(cls)
        obj._set(num, _ONE)
        return obj

    @classmethod
    def _scaled(cls, value, factor, extra_den):
        if extra_den == _ONE:
            obj = cls.__new__(cls)
            obj._set(value.num.scale(factor), value.den)
            return obj
        return cls._make(value.num.scale(factor), value.den * extra_den)

    def reciprocal(self) -> PiRat:
        if self.num.is_zero():
            raise ZeroDivisionError("reciprocal of zero")
        return PiRat._make(self.den, self.num)

    def __truediv__(self, other):
        other = _as_rat(other)
        if other is None:
            return NotImplemented
        if other.is_rational():
            return PiRat._scaled(self, 1 / other.num.constant_value(), _ONE)
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        return _as_rat(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return self.reciprocal() ** (-n)
        if self.den == _ONE:
            return PiRat._poly(self.num ** n)
        obj = PiRat.__new__(PiRat)
        obj._set(self.num ** n, self.den ** n)
        return obj

    def __lt__(self, other):
        return (self - _as_rat(other)).sign() < 0

    def __le__(self, other):
        return (self - _as_rat(other)).sign() <= 0

    def __gt__(self, other):
        return (self - _as_rat(other)).sign() > 0

    def __ge__(self, other):
        return (self - _as_rat(other)).sign() >= 0


_ONE = PiPoly.constant(1)


def _as_rat(value):
    if isinstance(value, PiRat):
        return value
    if isinstance(value, (int, Fraction, PiPoly)):
        return PiRat.of(value)
    return None


ZERO = PiRat(PiPoly())
ONE = PiRat(_ONE)
PI = PiRat.pi()
