import random
from fractions import Fraction

import mpmath
import pytest

from mtprove.errors import CannotCertify, GroupingFails
from mtprove.exact import PI, Interval, PiRat, Sign
from mtprove.exact.constexpr import pirat_from_json
from mtprove.polycert import certify_sign, sturm
from mtprove.polycert.tactics import (
    LADDER, STURM_START_DEPTH, quadratic_minimum, rational_proxy, tactic_pair_grouping,
    tactic_quadratic_vertex, tactic_sturm,
)
from mtprove.symbolic.polyx import PolyX

import oracles as o

X = PolyX.x()
ONE = PolyX.constant(1)


def iv(lo, hi, lo_closed=False, hi_closed=True):
    return Interval(PiRat.of(lo) if not isinstance(lo, PiRat) else lo,
                    PiRat.of(hi) if not isinstance(hi, PiRat) else hi, lo_closed, hi_closed)


def test_case1_a_negative_by_endpoint_bound():
    cert = certify_sign(o.A, iv(0, o.C_POINT), Sign.NEGATIVE)
    assert cert.tactic == "MonomialEndpoint"
    bound = pirat_from_json(cert.witness["bound"])
    # the tactic bounds -A from below; the bound on A is its negation
    assert -145000 < -float(bound) < -130000


@pytest.mark.parametrize("p", [-(X * X) - ONE, X - 2])
def test_small_negative_endpoint_examples(p):
    cert = certify_sign(p, iv(0, 1), Sign.NEGATIVE)
    assert cert.tactic == "MonomialEndpoint"
    assert pirat_from_json(cert.witness["bound"]) == PiRat.of(1)


def test_p14_pair_grouping_pairs():
    hull = iv(0, o.C_POINT).rational_hull()
    witness, _ = tactic_pair_grouping(o.P14, (hull.lo, hull.hi))
    assert witness["groups"] == [[14, 12], [10, 8], [6, 4], [2, 0]]


def test_pair_grouping_trivial_and_failing():
    witness, _ = tactic_pair_grouping(ONE + X * X, (Fraction(0), Fraction(5)))
    assert witness["groups"] == [[2, 0]]
    with pytest.raises(GroupingFails):
        tactic_pair_grouping(ONE - X * X, (Fraction(0), Fraction(2)))


def test_quadratic_vertex_cases():
    case, value = quadratic_minimum(X * X, PiRat.of(0), PiRat.of(1))
    assert (case, value) == ("vertex", PiRat.of(0))
    c1 = o.C1_POINT
    case, y1 = quadratic_minimum(o.PHI1, PiRat.of(0), c1)
    assert case == "vertex" and (y1 - 271).sign() == Sign.POSITIVE
    case, y2 = quadratic_minimum(o.PHI2, PiRat.of(0), c1)
    assert case == "hi" and (y2 + 815).sign() == Sign.POSITIVE
    assert y2 == o.PHI2.evaluate(c1)
    tactic_quadratic_vertex(o.PHI1 - 271, Interval(PiRat.of(0), c1, True, True))


def test_sturm_examples():
    tactic_sturm(X * X + 1, (Fraction(0), Fraction(2)))
    cert = certify_sign(X * X - 2, iv(0, 1, True, True), Sign.NEGATIVE, tactics=("Sturm",))
    assert cert.claimed == Sign.NEGATIVE
    cert = certify_sign((X - 1) * (X - 2), iv(0, 1, False, False), Sign.POSITIVE)
    assert cert.tactic == "Sturm"
    with pytest.raises(CannotCertify):
        certify_sign((X - 1) * (X - 2), iv(0, 3, False, False), Sign.POSITIVE)


def test_p14_sturm_cross_check():
    proxy = rational_proxy(o.P14, STURM_START_DEPTH)
    chain = sturm.sturm_chain(proxy)
    a, b = Fraction(0), Fraction(1343, 1000)
    assert sturm.variations(chain, a) == sturm.variations(chain, b)
    assert sturm.evaluate(proxy, a) > 0


def test_count_roots_against_known_roots():
    p = [Fraction(c) for c in (6, -11, 6, -1)]  # (1-x)(2-x)(3-x)
    assert sturm.count_roots(p, Fraction(0), Fraction(10)) == 3
    assert sturm.count_roots(p, Fraction(3, 2), Fraction(5, 2)) == 1
    assert sturm.count_roots(p, Fraction(1), Fraction(2)) == 1
    assert sturm.count_roots(p + p[:0], Fraction(-5), Fraction(0)) == 0


def _case_study_polys():
    h23 = iv(0, Fraction(23, 100), False, False)
    return [
        (o.A, iv(0, o.C_POINT), Sign.NEGATIVE),
        (o.P14, iv(0, o.C_POINT), Sign.POSITIVE),
        (o.C, iv(0, o.C_POINT), Sign.POSITIVE),
        (o.P - 225, h23, Sign.POSITIVE),
        (o.T10 - 27, h23, Sign.POSITIVE),
        (o.PSI[0], h23, Sign.POSITIVE),
        (o.PSI[1], h23, Sign.POSITIVE),
        (o.PSI[2] + 27, h23, Sign.POSITIVE),
        (o.PSI[3] - 54, h23, Sign.POSITIVE),
        (o.OMEGA_SIDE, iv(0, o.C1_POINT, False, False), Sign.POSITIVE),
    ]


@pytest.mark.parametrize("p, interval, want", _case_study_polys())
def test_sturm_agrees_with_ladder(p, interval, want):
    first = certify_sign(p, interval, want)
    assert first.claimed == want
    fallback = certify_sign(p, interval, want, tactics=("Sturm",))
    assert fallback.claimed == want


def _mp(q):
    return mpmath.mpf(q.numerator) / q.denominator


def test_proxy_is_below_polynomial():
    rng = random.Random(3)
    mpmath.mp.dps = 50
    for p, interval, want in _case_study_polys():
        q = p if want == Sign.POSITIVE else -p
        proxy = rational_proxy(q, STURM_START_DEPTH)
        hi = interval.rational_hull().hi
        for _ in range(100):
            x = Fraction(rng.randint(0, 10 ** 6), 10 ** 6) * hi
            assert _mp(sturm.evaluate(proxy, x)) <= q.mp(_mp(x))


def test_fuzz_never_contradicts_sampling():
    rng = random.Random(2024)
    certified = 0
    for _ in range(1000):
        deg = rng.choice((3, 4))
        coeffs = [Fraction(rng.randint(-20, 20), rng.randint(1, 5)) for _ in range(deg + 1)]
        p = PolyX([PiRat.of(c) for c in coeffs])
        lo = Fraction(rng.randint(0, 20), 10)
        hi = lo + Fraction(rng.randint(1, 20), 10)
        interval = iv(lo, hi, True, True)
        for want in (Sign.POSITIVE, Sign.NEGATIVE):
            try:
                cert = certify_sign(p, interval, want)
            except CannotCertify:
                continue
            certified += 1
            fc = [float(c) for c in reversed(coeffs)]
            for i in range(10 ** 4 + 1):
                xf = float(lo) + float(hi - lo) * i / 10 ** 4
                v = 0.0
                for c in fc:
                    v = v * xf + c
                if abs(v) < 1e-6:
                    # too close to call in floating point: decide exactly
                    x = lo + (hi - lo) * Fraction(i, 10 ** 4)
                    v = sum(c * x ** k for k, c in enumerate(coeffs))
                assert v * int(cert.claimed) > 0, (coeffs, lo, hi, want)
            break
    assert certified > 100


def test_zero_polynomial_claims():
    z = PolyX([])
    assert certify_sign(z, iv(0, 1), Sign.ZERO).tactic == "Zero"
    assert certify_sign(z, iv(0, 1), Sign.POSITIVE, strict=False).tactic == "Zero"
    with pytest.raises(CannotCertify):
        certify_sign(z, iv(0, 1), Sign.POSITIVE)


def test_closed_zero_endpoint_rejects_strict_vanishing():
    with pytest.raises(CannotCertify):
        certify_sign(X, iv(0, 1, True, True), Sign.POSITIVE)
    assert certify_sign(X, iv(0, 1, False, True), Sign.POSITIVE).x_power == 1


def test_ladder_order():
    assert LADDER == ("MonomialEndpoint", "PairGrouping", "QuadraticVertex", "Sturm")
