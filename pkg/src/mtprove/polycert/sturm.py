"""Sturm chains for polynomials with rational coefficients (index = power)."""

from fractions import Fraction
from math import gcd, lcm


def strip(p):
    p = [Fraction(c) for c in p]
    while p and p[-1] == 0:
        p.pop()
    return p


def evaluate(p, x: Fraction) -> Fraction:
    total = Fraction(0)
    for c in reversed(p):
        total = total * x + c
    return total


def derivative(p):
    return [c * k for k, c in enumerate(p)][1:]


def remainder(a, b):
    a = list(a)
    while len(a) >= len(b) and a:
        f = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] -= f * c
        a.pop()
        a = strip(a)
    return a


def _primitive(p):
    """Positive rescaling that keeps numbers small; signs are unaffected."""
    if not p:
        return p
    den = 1
    for c in p:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in p]
    g = 0
    for v in ints:
        g = gcd(g, v)
    return [Fraction(v, g) for v in ints]


def sturm_chain(p):
    p = strip(p)
    chain = [_primitive(p)]
    if len(p) <= 1:
        return chain
    chain.append(_primitive(derivative(p)))
    while True:
        r = remainder(chain[-2], chain[-1])
        if not r:
            return chain
        chain.append(_primitive([-c for c in r]))


def variations(chain, x: Fraction) -> int:
    signs = []
    for q in chain:
        v = evaluate(q, x)
        if v != 0:
            signs.append(v > 0)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(p, a: Fraction, b: Fraction) -> int:
    """Distinct real roots in (a, b]."""
    chain = sturm_chain(p)
    return variations(chain, a) - variations(chain, b)
