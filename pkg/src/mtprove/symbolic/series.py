"""Truncated Maclaurin series of MLTPs whose log singularities cancel at 0."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from ..errors import LogSingularity
from ..exact.constexpr import ConstExpr, const, ln, simplify
from ..exact.pipoly import ONE, ZERO, PiRat
from ..exact.sign import Sign
from .atoms import collect_atoms
from .mltp import MLTP
from .mtp import MTP
from .polyx import PolyX


@dataclass(frozen=True)
class Series:
    coefficients: tuple  # ConstExpr, index = power of x
    order: int

    def limit(self, j: int) -> ConstExpr:
        """lim_{x->0+} F^(j)(x) = j! * coefficient j."""
        return simplify(self.coefficients[j] * factorial(j))


def _mul(a, b, n):
    out = [ZERO] * (n + 1)
    for i, x in enumerate(a[: n + 1]):
        if x.is_zero():
            continue
        for j, y in enumerate(b[: n + 1 - i]):
            if not y.is_zero():
                out[i + j] = out[i + j] + x * y
    return out


def _pow(a, k, n):
    out = [ONE] + [ZERO] * n
    for _ in range(k):
        out = _mul(out, a, n)
    return out


def sin_series(n):
    out = [ZERO] * (n + 1)
    for k in range(1, n + 1, 2):
        out[k] = PiRat.of(Fraction((-1) ** (k // 2), factorial(k)))
    return out


def cos_series(n):
    out = [ZERO] * (n + 1)
    for k in range(0, n + 1, 2):
        out[k] = PiRat.of(Fraction((-1) ** (k // 2), factorial(k)))
    return out


def mtp_series(f: MTP, n: int):
    """Coefficients of x^0..x^n of f."""
    s, c = sin_series(n), cos_series(n)
    spow, cpow = {}, {}
    out = [ZERO] * (n + 1)
    for (p, q, r), alpha in f.terms:
        if p > n:
            continue
        if q not in cpow:
            cpow[q] = _pow(c, q, n)
        if r not in spow:
            spow[r] = _pow(s, r, n)
        prod = _mul(cpow[q], spow[r], n - p)
        for k, v in enumerate(prod):
            if not v.is_zero():
                out[k + p] = out[k + p] + alpha * v
    return out


def _unit_part(f: MTP, n: int):
    """(valuation v, coefficients of f / x^v through x^n)."""
    extra = 8
    while True:
        coeffs = mtp_series(f, n + extra)
        for v, c in enumerate(coeffs):
            if not c.is_zero():
                if v + n <= n + extra:
                    return v, coeffs[v: v + n + 1]
                break
        if extra > 64:
            raise LogSingularity("log argument vanishes to very high order at 0")
        extra *= 2


def _log1p(w, n):
    """ln(1 + w) for a series w with w[0] = 0."""
    out = [ZERO] * (n + 1)
    power = [ONE] + [ZERO] * n
    for k in range(1, n + 1):
        power = _mul(power, w, n)
        scale = PiRat.of(Fraction((-1) ** (k + 1), k))
        for i, v in enumerate(power):
            if not v.is_zero():
                out[i] = out[i] + v * scale
    return out


def series_at_zero(F: MLTP, order: int) -> Series:
    n = order
    rational = mtp_series(F.base, n)
    log_parts = []  # (multiplier, ln argument) pairs contributing constants
    singular = PolyX()
    for atom, mult in collect_atoms(F):
        v, unit = _unit_part(atom.mtp(), n)
        u0 = unit[0]
        if u0.sign() != Sign.POSITIVE:
            raise LogSingularity(f"log factor {atom.mtp()} does not have a positive limit ratio at 0")
        singular = singular + mult.scale(v)
        w = [ZERO] + [c / u0 for c in unit[1:]]
        series = _mul([mult.coefficient(k) for k in range(n + 1)], _log1p(w, n), n)
        rational = [a + b for a, b in zip(rational, series)]
        if u0 != ONE:
            log_parts.append((mult, u0))
    if not singular.is_zero():
        raise LogSingularity(f"ln x terms do not cancel: residual multiplier {singular}")
    coeffs = []
    for k in range(n + 1):
        e = const(rational[k])
        for mult, u0 in log_parts:
            m = mult.coefficient(k)
            if not m.is_zero():
                e = e + const(m) * ln(const(u0))
        coeffs.append(simplify(e))
    return Series(tuple(coeffs), order)
