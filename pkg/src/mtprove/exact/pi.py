"""Rational brackets of pi from continued-fraction convergents."""

from fractions import Fraction
from functools import lru_cache

from .enclosure import Enclosure

PI_DIGITS = "3.14159265358979323846264338327950288419716939937510"

# the true value lies in [PI_LOWER, PI_LOWER + 10^-50]; the next digits are 582...
PI_LOWER = Fraction(PI_DIGITS)
PI_UPPER = PI_LOWER + Fraction(1, 10 ** 50)


def _partial_quotients(value: Fraction, limit: int = 200):
    out = []
    while len(out) < limit:
        a = value.numerator // value.denominator
        out.append(a)
        frac = value - a
        if frac == 0:
            break
        value = 1 / frac
    return out


@lru_cache(maxsize=1)
def partial_quotients():
    """Partial quotients shared by both ends of the decimal bracket.

    Cylinder sets of the continued-fraction map are intervals, so every
    number between the two ends (pi included) has this prefix.
    """
    lo = _partial_quotients(PI_LOWER)
    hi = _partial_quotients(PI_UPPER)
    prefix = []
    for a, b in zip(lo, hi):
        if a != b:
            break
        prefix.append(a)
    # the last shared quotient may still be cut short by truncation of the tail
    return tuple(prefix[:-1])


@lru_cache(maxsize=1)
def convergents():
    out = []
    h0, h1 = 1, 0
    k0, k1 = 0, 1
    for a in partial_quotients():
        h0, h1 = a * h0 + h1, h0
        k0, k1 = a * k0 + k1, k0
        out.append(Fraction(h0, k0))
    return tuple(out)


def max_depth() -> int:
    return (len(convergents()) - 2) // 2


def pi_enclosure(depth: int) -> Enclosure:
    """Return ``[c_2d, c_2d+1]``; depths beyond the compiled-in digits are clamped."""
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    depth = min(depth, max_depth())
    conv = convergents()
    return Enclosure(conv[2 * depth], conv[2 * depth + 1])
