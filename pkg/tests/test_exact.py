import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from mtprove.errors import UndecidableAtBudget
from mtprove.exact import (
    PI, PI_EXPR, Enclosure, PiPoly, PiRat, Sign, const, enclose_const, ln,
    log_normal_form, pi_enclosure, sign_const, simplify, to_pirat,
)
from mtprove.exact.constexpr import const_from_json, const_to_json, pirat_from_json, pirat_to_json
from mtprove.exact.logs import ln_rational, log1p_bracket

mpmath.mp.dps = 50


def _cf_convergents(x, count):
    """Independent oracle: convergents of an mpmath number."""
    out = []
    h0, h1, k0, k1 = 1, 0, 0, 1
    for _ in range(count):
        a = int(mpmath.floor(x))
        h0, h1 = a * h0 + h1, h0
        k0, k1 = a * k0 + k1, k0
        out.append(Fraction(h0, k0))
        x = 1 / (x - a)
    return out


def test_pi_enclosure_frozen_values():
    assert pi_enclosure(0) == Enclosure(Fraction(3), Fraction(22, 7))
    assert pi_enclosure(1) == Enclosure(Fraction(333, 106), Fraction(355, 113))


def test_pi_enclosure_matches_oracle():
    conv = _cf_convergents(+mpmath.pi, 20)
    for d in range(9):
        enc = pi_enclosure(d)
        assert (enc.lo, enc.hi) == (conv[2 * d], conv[2 * d + 1])


def test_pi_enclosure_nested_and_shrinking():
    prev = pi_enclosure(0)
    for d in range(1, 12):
        cur = pi_enclosure(d)
        assert cur.subset_of(prev)
        assert cur.width < prev.width
        assert _mp(cur.lo) < mpmath.pi < _mp(cur.hi)
        prev = cur
    assert pi_enclosure(5).width < Fraction(1, 10 ** 10)


def test_enclose_const_examples():
    assert enclose_const(PI_EXPR - Fraction(22, 7), 1).hi < 0
    assert enclose_const(const(0)) == Enclosure.point(0)
    g = ln(PI_EXPR / 2) / 5 - (2 * PI_EXPR - 6) / PI_EXPR
    enc = enclose_const(g, 8, 32)
    assert enc.lo > 0
    value = mpmath.log(mpmath.pi / 2) / 5 - (2 * mpmath.pi - 6) / mpmath.pi
    assert _mp(enc.lo) <= value <= _mp(enc.hi)


@pytest.mark.parametrize("expr", [const(Fraction(1, 864000)), const(Fraction(23, 100)) * 7 - 3])
def test_rational_constant_is_exact(expr):
    enc = enclose_const(expr)
    assert enc.lo == enc.hi


def test_sign_const_examples():
    assert sign_const(PI_EXPR ** 3 - 24 * PI_EXPR + 48) == Sign.POSITIVE
    assert sign_const(PI_EXPR ** 3 - 60 * PI_EXPR + 120) == Sign.NEGATIVE
    assert sign_const(PI_EXPR - PI_EXPR) == Sign.ZERO
    assert sign_const(PI_EXPR ** 3 - 60 * PI_EXPR - 120) == Sign.NEGATIVE


def test_ln_identities_normalise_to_zero():
    assert simplify(ln(PI_EXPR / 2) + ln(2 / PI_EXPR)) == const(0)
    assert sign_const(ln(PI_EXPR ** 2 - 4) - ln(PI_EXPR - 2) - ln(PI_EXPR + 2)) == Sign.ZERO
    assert sign_const(ln(const(6)) - ln(const(2)) - ln(const(3))) == Sign.ZERO


def test_ln_never_returns_zero_without_identity():
    # ln(pi) - ln(pi + 10^-60) is not an identity; the oracle must refuse rather than guess
    tiny = const(Fraction(1, 10 ** 60))
    with pytest.raises(UndecidableAtBudget):
        sign_const(ln(PI_EXPR) - ln(PI_EXPR + tiny), budget=2)


def test_log_brackets_contain_true_value():
    for t in [Fraction(1, 3), Fraction(-1, 3), Fraction(1, 7), Fraction(-2, 9), Fraction(1)]:
        b = log1p_bracket(t, 12)
        assert _mp(b.lo) <= mpmath.log(1 + _mp(t)) <= _mp(b.hi)
    for a in [Fraction(2), Fraction(1, 1000), Fraction(355, 113), Fraction(10 ** 9, 7)]:
        b = ln_rational(a, 32)
        true = mpmath.log(mpmath.mpf(a.numerator) / a.denominator)
        assert _mp(b.lo) <= true <= _mp(b.hi)
        assert b.width < Fraction(1, 10 ** 12)


def _mp(q: Fraction):
    return mpmath.mpf(q.numerator) / q.denominator


def test_sign_oracle_agrees_with_50_digit_evaluation():
    rng = random.Random(7)
    checked = 0
    for _ in range(1000):
        deg = rng.randint(0, 9)
        coeffs = [rng.randint(-10 ** 6, 10 ** 6) for _ in range(deg + 1)]
        p = PiPoly(coeffs)
        value = sum(c * mpmath.pi ** k for k, c in enumerate(coeffs))
        if abs(value) <= mpmath.mpf(10) ** -20:
            continue
        assert int(sign_const(const(p))) == (1 if value > 0 else -1)
        checked += 1
    assert checked > 900


def _rand_enclosure(rng):
    a = Fraction(rng.randint(-1000, 1000), rng.randint(1, 50))
    b = a + Fraction(rng.randint(0, 1000), rng.randint(1, 50))
    return Enclosure(a, b)


def _point_in(rng, enc):
    t = Fraction(rng.randint(0, 100), 100)
    return enc.lo + t * (enc.hi - enc.lo)


def test_enclosure_inclusion_monotone():
    rng = random.Random(11)
    for _ in range(10 ** 4):
        X, Y = _rand_enclosure(rng), _rand_enclosure(rng)
        x, y = _point_in(rng, X), _point_in(rng, Y)
        assert x + y in X + Y
        assert x - y in X - Y
        assert x * y in X * Y
        if Y.lo > 0 or Y.hi < 0:
            assert x / y in X / Y


_coeffs = st.lists(st.builds(Fraction, st.integers(-99, 99), st.integers(1, 50)), min_size=1, max_size=6)


@given(_coeffs, _coeffs)
@settings(max_examples=60, deadline=None)
def test_pirat_field_laws(a, b):
    p, q = PiPoly(a), PiPoly(b)
    if q.is_zero() or p.is_zero():
        return
    r = PiRat(p, q)
    assert r * PiRat(q) == PiRat(p)
    assert (r + PiRat(q)) - PiRat(q) == r
    assert r / r == PiRat.of(1)
    assert pirat_from_json(pirat_to_json(r)) == r


def test_pirat_canonical_form():
    pi = PI
    a = (pi ** 2 - 4) / (pi - 2)
    assert a == pi + 2
    assert a.is_poly()
    assert hash(a) == hash(pi + 2)
    assert to_pirat(PI_EXPR / PI_EXPR) == PiRat.of(1)


def test_log_normal_form_bases_coprime():
    nf = log_normal_form(ln(PI_EXPR ** 3 / 8) - 3 * ln(PI_EXPR))
    assert nf.is_log_free() is False
    # the pi parts cancel, leaving -ln 8
    assert [(c, b) for c, b in nf.logs] == [(PiRat.of(-1), PiRat.of(8))]
    nf = log_normal_form(ln(const(8)) - 3 * ln(const(2)))
    assert nf.is_log_free() and nf.rational.is_zero()


def test_const_json_round_trip():
    e = ln(PI_EXPR / 2) / 5 - (2 * PI_EXPR - 6) / PI_EXPR
    assert const_from_json(const_to_json(e)) == e
