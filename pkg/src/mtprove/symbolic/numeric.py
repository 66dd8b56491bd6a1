"""mpmath evaluation of exact values, for cross-checks and sampling."""

import mpmath

from ..exact.pipoly import PiPoly, PiRat


def pipoly_mp(p: PiPoly):
    total = mpmath.mpf(0)
    for c in reversed(p.coefficients):
        total = total * mpmath.pi + mpmath.mpf(c.numerator) / c.denominator
    return total


def pirat_mp(value: PiRat):
    value = PiRat.of(value)
    if value.den.is_constant():
        return pipoly_mp(value.num)
    return pipoly_mp(value.num) / pipoly_mp(value.den)
