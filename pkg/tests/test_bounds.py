import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from mtprove.bounds import (
    LOWER, UPPER, catalog_degrees, choose_truncation, polynomial_minorant, truncation,
)
from mtprove.errors import ParityMismatch, RadiusExceeded, SignUndecided
from mtprove.exact import PI, Interval, PiRat
from mtprove.symbolic.mltp import to_mltp
from mtprove.symbolic.mtp import MTP
from mtprove.symbolic.parser import parse_expr
from mtprove.symbolic.polyx import PolyX
from mtprove.symbolic.quotient import derivative_quotient

import oracles as o

X = PolyX.x()


@pytest.mark.parametrize("func, degree, direction, radius_sq", [
    ("cos", 6, LOWER, 90), ("sin", 5, UPPER, 72), ("cos", 2, LOWER, 30), ("sin", 1, UPPER, 20),
    ("sin", 3, LOWER, 42), ("cos", 0, UPPER, 12), ("cos", 4, UPPER, 56),
])
def test_catalog_entries(func, degree, direction, radius_sq):
    b = truncation(func, degree)
    assert (b.direction, b.radius_sq) == (direction, radius_sq)


def test_catalog_listing():
    assert catalog_degrees("sin", UPPER) == [1, 5, 9, 13]
    assert catalog_degrees("sin", LOWER) == [3, 7, 11]
    assert catalog_degrees("cos", LOWER) == [2, 6, 10]
    assert catalog_degrees("cos", UPPER) == [0, 4, 8, 12]
    assert choose_truncation("cos", LOWER, 2, 6).included_degree == 6
    assert choose_truncation("sin", UPPER, 2, 6).included_degree == 5
    assert choose_truncation("sin", LOWER, 1, 2) is None
    with pytest.raises(ParityMismatch):
        truncation("sin", 2)


@pytest.mark.parametrize("func", ["sin", "cos"])
@pytest.mark.parametrize("degree", range(10))
def test_truncation_direction_on_grid(func, degree):
    try:
        b = truncation(func, degree)
    except ParityMismatch:
        return
    mpmath.mp.dps = 50
    f = mpmath.sin if func == "sin" else mpmath.cos
    top = mpmath.mpf("0.999") * mpmath.sqrt(b.radius_sq)
    for i in range(1, 1001):
        x = top * i / 1000
        gap = f(x) - b.poly.mp(x)
        assert gap >= 0 if b.direction == LOWER else gap <= 0


def test_sin_minorant_on_unit_interval():
    m = polynomial_minorant(MTP.monomial(PiRat.of(1), 0, 0, 1), Interval(PiRat.of(0), PiRat.of(1), False, True),
                            level=2)
    assert m.poly == X - X ** 3 / 6


def test_minorant_refuses_outside_quarter_circle():
    with pytest.raises(RadiusExceeded):
        polynomial_minorant(MTP.monomial(PiRat.of(1), 0, 1, 0), Interval(PiRat.of(0), PiRat.of(2), False, True))


def test_case1_minorant_is_scaled_p14():
    f1 = to_mltp(parse_expr(f"ln(sin(x)) - ln(x) - ({o.THETA1})*ln({o.BASE})"))
    n = derivative_quotient(f1, 3).numerator.scale(45 * PI ** 9)
    groups = n.trig_groups()
    # numerator 2A sin^3 + B cos
    assert groups[(0, 3)] == o.A * 2 and groups[(1, 0)] == o.B
    m = polynomial_minorant(n, Interval(PiRat.of(0), o.C_POINT, False, True), level=2)
    assert [b.included_degree for b in m.bounds_used()] == [5, 6]
    assert m.poly.valuation() == 9
    assert m.poly.shift_down(9) * 864000 == o.P14
    signs = [int(o.P14.coefficient(k).sign()) for k in range(14, -1, -2)]
    assert signs == [-1, 1, -1, 1, -1, 1, -1, 1]


def test_case2_minorant_is_t10():
    g1 = to_mltp(parse_expr(f"ln(cos(x)) - ln(pi/2-x) - ({o.OMEGA1})*ln(2/pi + (pi-2)/pi^3*(pi^2-4*(pi/2-x)^2))"))
    homog = [p for p in derivative_quotient(g1, 2).presentations() if set(p.trig_groups()) == {(2, 0), (0, 2)}][0]
    n = homog.scale(5 * PI ** 6)
    assert n.trig_groups()[(2, 0)] == o.P and n.trig_groups()[(0, 2)] == -o.Q
    m = polynomial_minorant(n, Interval(PiRat.of(0), o.C1_POINT, False, False), level=1)
    assert m.poly == o.T10


_small = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 4))


@given(st.lists(st.tuples(_small, st.integers(0, 3), st.integers(0, 2), st.integers(0, 2)), min_size=1, max_size=5),
       st.sampled_from([Fraction(1, 2), Fraction(1), Fraction(3, 2)]), st.integers(1, 3))
@settings(max_examples=60, deadline=None)
def test_minorant_is_below_function(terms, hi, level):
    g = MTP()
    for a, p, q, r in terms:
        g = g + MTP.monomial(PiRat.of(a), p, q, r)
    interval = Interval(PiRat.of(0), PiRat.of(hi), False, True)
    try:
        m = polynomial_minorant(g, interval, level=level)
    except (RadiusExceeded, SignUndecided):
        return
    mpmath.mp.dps = 30
    rng = random.Random(1)
    for _ in range(50):
        x = mpmath.mpf(rng.random()) * float(hi)
        assert m.poly.mp(x) <= g.mp(x) + mpmath.mpf(10) ** -20
