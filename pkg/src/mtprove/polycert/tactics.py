"""Tactic ladder for polynomial sign certification.

Every tactic proves positivity; a negative claim is handled by negating the
polynomial first. A factor x^j is divided out when x > 0 on the interval.
"""

from __future__ import annotations

from fractions import Fraction
from math import floor

from ..errors import BoundInconclusive, CannotCertify, GroupingFails, ProxyTooLoose, UndecidableAtBudget
from ..exact.constexpr import pirat_to_json
from ..exact.domain import Interval
from ..exact.pipoly import ZERO, PiRat
from ..exact.sign import Sign
from ..symbolic.polyx import PolyX
from . import sturm
from .certificate import SignCertificate

LADDER = ("MonomialEndpoint", "PairGrouping", "QuadraticVertex", "Sturm")
STURM_START_DEPTH = 8


def qtext(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _sign(value: PiRat) -> Sign:
    try:
        return value.sign()
    except UndecidableAtBudget as exc:
        raise CannotCertify(f"sign of {value} undecided") from exc


def _accepts(s: Sign, strict: bool) -> bool:
    return s == Sign.POSITIVE or (not strict and s == Sign.ZERO)


def _margin(value: PiRat) -> Fraction:
    lo = value.enclose(8).lo
    return lo if lo > 0 else Fraction(0)


def oriented(p: PolyX, want: Sign) -> PolyX:
    return p if want == Sign.POSITIVE else -p


def tactic_monomial_endpoint(q: PolyX, hull, strict: bool = True):
    """Lower bound sum over k of a_k * (lo if a_k > 0 else hi)^k must be positive."""
    lo, hi = hull
    if lo < 0:
        raise BoundInconclusive("needs a nonnegative interval")
    bound = ZERO
    for k, a in enumerate(q.coeffs):
        s = _sign(a)
        if s == Sign.ZERO:
            continue
        point = lo if s == Sign.POSITIVE else hi
        bound = bound + a * (point ** k)
    if not _accepts(_sign(bound), strict):
        raise BoundInconclusive(f"endpoint bound {float(bound):.6g} is not positive")
    return {"hull": [qtext(lo), qtext(hi)], "bound": pirat_to_json(bound)}, _margin(bound)


def _groups(exps, from_top: bool):
    order = exps if from_top else exps[::-1]
    out = []
    i = 0
    if not from_top and len(order) % 2:
        out.append([order[0]])
        i = 1
    while i < len(order):
        if i + 1 < len(order):
            pair = [order[i], order[i + 1]] if from_top else [order[i + 1], order[i]]
            out.append(pair)
            i += 2
        else:
            out.append([order[i]])
            i += 1
    return out


def tactic_pair_grouping(q: PolyX, hull, strict: bool = True):
    """Groups x^j (a x^d + b) with b > 0; when a < 0 require a * hi^d + b > 0."""
    lo, hi = hull
    if lo < 0:
        raise GroupingFails("needs a nonnegative interval")
    exps = [k for k in range(q.degree, -1, -1) if not q.coefficient(k).is_zero()]
    if not exps:
        raise GroupingFails("zero polynomial")
    failure = None
    for from_top in (True, False):
        groups = _groups(exps, from_top)
        try:
            for g in groups:
                low = q.coefficient(g[-1])
                if _sign(low) != Sign.POSITIVE:
                    raise GroupingFails(f"coefficient of x^{g[-1]} is not positive")
                if len(g) == 2:
                    a = q.coefficient(g[0])
                    if _sign(a) == Sign.NEGATIVE:
                        check = a * hi ** (g[0] - g[1]) + low
                        if not _accepts(_sign(check), strict):
                            raise GroupingFails(f"group x^{g[1]}(a x^{g[0] - g[1]} + b) fails at the endpoint")
            return {"hull_hi": qtext(hi), "groups": groups}, Fraction(0)
        except GroupingFails as exc:
            failure = exc
    raise failure


def quadratic_minimum(q: PolyX, lo: PiRat, hi: PiRat):
    """(case, minimum) of a polynomial of degree <= 2 over the closed [lo, hi]."""
    if q.degree > 2:
        raise CannotCertify("degree exceeds 2")
    a2 = q.coefficient(2)
    if q.degree == 2 and _sign(a2) == Sign.POSITIVE:
        v = -q.coefficient(1) / (a2 * 2)
        if _sign(v - lo) != Sign.NEGATIVE and _sign(hi - v) != Sign.NEGATIVE:
            # convex with the vertex inside: it is the minimum
            return "vertex", q.evaluate(v)
    candidates = [("lo", q.evaluate(lo)), ("hi", q.evaluate(hi))]
    best = candidates[0]
    for c in candidates[1:]:
        if _sign(c[1] - best[1]) == Sign.NEGATIVE:
            best = c
    return best


def tactic_quadratic_vertex(q: PolyX, interval: Interval, strict: bool = True):
    case, value = quadratic_minimum(q, interval.lo, interval.hi)
    if not _accepts(_sign(value), strict):
        raise CannotCertify(f"minimum {float(value):.6g} ({case}) is not positive")
    return {"case": case, "minimum": pirat_to_json(value)}, _margin(value)


def _round_down(q: Fraction, bits: int) -> Fraction:
    scale = 1 << bits
    return Fraction(floor(q * scale), scale)


def rational_proxy(q: PolyX, depth: int):
    """Rational lower bounds of each coefficient; below q pointwise on x >= 0."""
    out = []
    for a in q.coeffs:
        if a.is_rational():
            out.append(a.rational_value())
        else:
            out.append(_round_down(a.enclose(depth).lo, 4 * depth + 32))
    return out


def tactic_sturm(q: PolyX, hull, strict: bool = True, rounds: int = 2, open_ends=(False, False)):
    """Sturm count of a rational proxy below q.

    An end flagged open may be a root of the proxy: V(lo) - V(hi) counts
    roots in (lo, hi], so a root at an open hi is discounted, and a positive
    sample at the midpoint fixes the sign of the root-free open interval.
    """
    lo, hi = hull
    if lo < 0:
        raise ProxyTooLoose("rational proxy needs x >= 0")
    depth = STURM_START_DEPTH
    sample = (lo + hi) / 2
    for _ in range(rounds + 1):
        proxy = rational_proxy(q, depth)
        chain = sturm.sturm_chain(proxy)
        va, vb = sturm.variations(chain, lo), sturm.variations(chain, hi)
        at_lo, at_hi = sturm.evaluate(proxy, lo), sturm.evaluate(proxy, hi)
        inner = va - vb - (1 if at_hi == 0 else 0)
        ends_ok = (at_lo > 0 or (open_ends[0] and at_lo == 0)) and \
                  (at_hi > 0 or (open_ends[1] and at_hi == 0))
        if ends_ok and inner == 0 and sturm.evaluate(proxy, sample) > 0:
            return {"hull": [qtext(lo), qtext(hi)], "open": list(open_ends), "pi_depth": depth,
                    "proxy": [qtext(c) for c in proxy],
                    "chain": [[qtext(c) for c in link] for link in chain],
                    "variations": [va, vb], "sample": qtext(sample)}, Fraction(0)
        depth *= 2
    raise ProxyTooLoose("rational proxy has roots in the interval")


def _exact_open_ends(interval: Interval, lo: Fraction, hi: Fraction):
    def exact(end: PiRat, q: Fraction) -> bool:
        return end.is_rational() and end.rational_value() == q
    return (not interval.lo_closed and exact(interval.lo, lo),
            not interval.hi_closed and exact(interval.hi, hi))


def certify_sign(p: PolyX, interval: Interval, want: Sign, budget: int = 2,
                 strict: bool = True, tactics=LADDER) -> SignCertificate:
    """Certificate that ``want * p > 0`` on the interval (``>= 0`` if not strict)."""
    if want == Sign.ZERO:
        if p.is_zero():
            return SignCertificate(p, interval, want, False, "Zero")
        raise CannotCertify("polynomial is not identically zero")
    if p.is_zero():
        if strict:
            raise CannotCertify("zero polynomial has no strict sign")
        return SignCertificate(p, interval, want, False, "Zero")
    q = oriented(p, want)
    j = 0
    if _sign(interval.lo) != Sign.NEGATIVE:
        j = q.valuation()
        if j and interval.lo.is_zero() and interval.lo_closed and strict:
            raise CannotCertify("polynomial vanishes at the closed endpoint 0")
        q = q.shift_down(j)
    hull = interval.rational_hull()
    hull = (hull.lo, hull.hi)
    reasons = []
    for name in tactics:
        try:
            if name == "MonomialEndpoint":
                witness, margin = tactic_monomial_endpoint(q, hull, strict)
            elif name == "PairGrouping":
                witness, margin = tactic_pair_grouping(q, hull, strict)
            elif name == "QuadraticVertex":
                witness, margin = tactic_quadratic_vertex(q, interval, strict)
            elif name == "Sturm":
                witness, margin = tactic_sturm(q, hull, strict, budget, _exact_open_ends(interval, *hull))
            else:
                raise ValueError(f"unknown tactic {name}")
        except CannotCertify as exc:
            reasons.append(f"{name}: {exc}")
            continue
        return SignCertificate(p, interval, want, strict, name, witness, margin, j)
    raise CannotCertify("; ".join(reasons) or "no tactic applies")
