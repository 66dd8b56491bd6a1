"""Rigorous brackets for natural logarithms of positive rationals."""

from fractions import Fraction
from functools import lru_cache
from math import ceil, floor

from .enclosure import Enclosure

_TWO_THIRDS = Fraction(2, 3)
_FOUR_THIRDS = Fraction(4, 3)


def _series_partial(t: Fraction, terms: int) -> Fraction:
    total = Fraction(0)
    power = Fraction(1)
    for k in range(1, terms + 1):
        power *= t
        total += power / k if k % 2 else -power / k
    return total


def log1p_bracket(t: Fraction, terms: int) -> Enclosure:
    """Bracket ln(1 + t) for -1/2 <= t <= 1."""
    if not Fraction(-1, 2) <= t <= 1:
        raise ValueError("log1p_bracket needs -1/2 <= t <= 1")
    if t == 0:
        return Enclosure.point(0)
    s = _series_partial(t, terms)
    nxt = t ** (terms + 1) / (terms + 1)
    if t > 0:
        # alternating with decreasing terms: consecutive partial sums bracket
        s2 = s + nxt if terms % 2 == 0 else s - nxt
        return Enclosure(min(s, s2), max(s, s2))
    # every term is negative: partial sum is an upper bound, geometric tail below
    a = -t
    tail = a ** (terms + 1) / ((terms + 1) * (1 - a))
    return Enclosure(s - tail, s)


@lru_cache(maxsize=64)
def ln2_bracket(terms: int) -> Enclosure:
    # ln 2 = ln(4/3) - ln(2/3); both arguments converge like 3^-n
    return log1p_bracket(Fraction(1, 3), terms) - log1p_bracket(Fraction(-1, 3), terms)


def _grid(q: Fraction, bits: int, up: bool) -> Fraction:
    scaled = q * (1 << bits)
    n = ceil(scaled) if up else floor(scaled)
    return Fraction(n, 1 << bits)


def ln_rational(a: Fraction, terms: int) -> Enclosure:
    """Bracket ln(a) for rational a > 0 via ln(a) = ln(a * 2^-k) + k ln 2."""
    if a <= 0:
        raise ValueError("ln of a nonpositive number")
    if a == 1:
        return Enclosure.point(0)
    k = a.numerator.bit_length() - a.denominator.bit_length()
    r = a / Fraction(2) ** k if k >= 0 else a * Fraction(2) ** (-k)
    while r > _FOUR_THIRDS:
        r /= 2
        k += 1
    while r < _TWO_THIRDS:
        r *= 2
        k -= 1
    core = log1p_bracket(r - 1, terms)
    if k == 0:
        return core
    return core + ln2_bracket(terms) * k


def ln_enclosure(x: Enclosure, terms: int) -> Enclosure:
    """ln is increasing, so brackets at the two ends give a bracket of the image."""
    if x.lo <= 0:
        raise ValueError("ln of an enclosure reaching zero")
    bits = 2 * terms + 64
    lo_arg = _grid(x.lo, bits, up=False)
    if lo_arg <= 0:
        lo_arg = x.lo
    hi_arg = _grid(x.hi, bits, up=True)
    lo = ln_rational(lo_arg, terms).lo
    hi = ln_rational(hi_arg, terms).hi
    return Enclosure(_grid(lo, bits, up=False), _grid(hi, bits, up=True))
