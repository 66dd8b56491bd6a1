import random
from fractions import Fraction

import mpmath
import pytest

from mtprove.errors import LogSingularity, NotMLTP, OrderTooLow, ParseError
from mtprove.exact import PI, PiRat
from mtprove.exact.constexpr import PI_EXPR, const, enclose_const, ln, sign_const
from mtprove.exact.sign import Sign
from mtprove.symbolic import expr as E
from mtprove.symbolic.mltp import MLTP, mltp_expr, to_mltp, to_mtp
from mtprove.symbolic.mtp import COS, MTP, SIN, X
from mtprove.symbolic.parser import parse_expr
from mtprove.symbolic.polyx import PolyX
from mtprove.symbolic.quotient import derivative_quotient
from mtprove.symbolic.series import series_at_zero

mpmath.mp.dps = 50

THETA = "-(48-24*pi+pi^3)*x^3/(3*(pi-2)*pi^3) + pi^3/(24*(pi-2))"
THETA1 = "(pi^3-60*pi+120)/(720*(pi-2))*x^2 + pi^3/(24*(pi-2))"
BASE = "2/pi + (pi-2)/pi^3*(pi^2-4*x^2)"


def _F(theta):
    return to_mltp(parse_expr(f"ln(sin(x)) - ln(x) - ({theta})*ln({BASE})"))


def _G1():
    return to_mltp(parse_expr(f"ln(sin(x)) - ln(x) - (1 + (pi/2 - x)/5)*ln({BASE})")).reflect()


# -- parser -------------------------------------------------------------------------

def test_parse_examples():
    assert parse_expr("sin(x)/x") == E.Div(E.Sin(E.X), E.X)
    theta = to_mtp(parse_expr(THETA)).as_polyx()
    assert theta is not None and theta.degree == 3
    assert theta.coefficient(0) == PI ** 3 / (24 * (PI - 2))


@pytest.mark.parametrize("text,offset", [("sin(", 4), ("x + ", 4), ("2.5*x", 1), ("(x", 2), ("x $ 1", 2)])
def test_parse_errors_report_offset(text, offset):
    with pytest.raises(ParseError) as info:
        parse_expr(text)
    assert info.value.position == offset


def test_rational_literal_and_power_precedence():
    assert parse_expr("1/2^3") == E.Div(E.Num(Fraction(1)), E.Pow(E.Num(Fraction(2)), 3))
    assert parse_expr("2/3*x") == E.Mul(E.Num(Fraction(2, 3)), E.X)
    assert parse_expr("-x^2") == E.Neg(E.Pow(E.X, 2))


def test_render_reparses_identically():
    for text in ["sin(x)/x", THETA, "1/(2)", "x*3/(2)", "(1/2)^2", "x^(x + 1)", "-(-x)", "ln(cos(x))^2"]:
        e = parse_expr(text)
        assert parse_expr(E.render(e)) == e


# -- differentiation ----------------------------------------------------------------

def test_differentiate_examples():
    d = E.differentiate(parse_expr("ln(sin(x))"))
    assert d == E.Div(E.Cos(E.X), E.Sin(E.X))
    d = E.differentiate(parse_expr("x^2*cos(x)"))
    assert to_mltp(d) == to_mltp(parse_expr("2*x*cos(x) - x^2*sin(x)"))


def _random_expr(rng, depth):
    if depth == 0:
        return rng.choice([E.X, E.X, E.PI_SYM, E.Num(Fraction(rng.randint(1, 9), rng.randint(1, 4)))])
    kind = rng.randrange(9)
    a = _random_expr(rng, depth - 1)
    if kind == 0:
        return E.Add(a, _random_expr(rng, depth - 1))
    if kind == 1:
        return E.Sub(a, _random_expr(rng, depth - 1))
    if kind == 2:
        return E.Mul(a, _random_expr(rng, depth - 1))
    if kind == 3:
        return E.Div(a, E.Add(E.Num(Fraction(2)), E.Pow(_random_expr(rng, depth - 1), 2)))
    if kind == 4:
        return E.Pow(a, rng.randint(0, 3))
    if kind == 5:
        return E.Sin(a)
    if kind == 6:
        return E.Cos(a)
    if kind == 7:
        return E.Ln(E.Add(E.Num(Fraction(1)), E.Pow(a, 2)))
    return rng.choice([E.Ln(E.X), E.Ln(E.Sin(E.X)), E.Ln(E.Cos(E.X)), E.Div(a, E.X)])


def test_differentiate_matches_central_differences():
    rng = random.Random(3)
    h = mpmath.mpf(10) ** -15
    checked = 0
    while checked < 200:
        e = _random_expr(rng, 3)
        x = mpmath.mpf(rng.uniform(0.1, 1.4))
        d = E.evaluate(E.differentiate(e), x)
        fd = (E.evaluate(e, x + h) - E.evaluate(e, x - h)) / (2 * h)
        scale = max(abs(fd), mpmath.mpf(1))
        assert abs(d - fd) / scale < mpmath.mpf(10) ** -6, E.render(e)
        checked += 1


# -- MLTP construction ----------------------------------------------------------------

def test_to_mltp_examples():
    F = _F(THETA)
    assert len(F.logs) == 3 and F.K == 3
    G = to_mltp(parse_expr("sin(x) - x*cos(x)"))
    assert G.logs == () and G.base == SIN - X * COS
    with pytest.raises(NotMLTP):
        to_mltp(parse_expr("ln(ln(x))"))
    with pytest.raises(NotMLTP):
        to_mltp(parse_expr("sin(x)/x"))
    with pytest.raises(NotMLTP):
        to_mltp(parse_expr(f"({BASE})^(x)"))


def test_log_arguments_split_and_merge():
    F = to_mltp(parse_expr("ln(2*x) + ln(x^2) - ln(x/2) + x*ln(pi)"))
    by_arg = {a: m for m, a in F.logs}
    assert by_arg[X] == PolyX.constant(2)
    assert by_arg[MTP.constant(2)] == PolyX.constant(1) + PolyX.constant(1)
    assert by_arg[MTP.constant(PI)] == PolyX.x()


def _random_mltp(rng):
    def coeff():
        return PiRat.of(Fraction(rng.randint(-9, 9), rng.randint(1, 5))) + PI * rng.randint(-2, 2)

    def mtp(n):
        return MTP([((rng.randint(0, 3), rng.randint(0, 2), rng.randint(0, 2)), coeff()) for _ in range(n)])

    logs = []
    for _ in range(rng.randint(0, 3)):
        arg = MTP.constant(1) + mtp(rng.randint(1, 3)).scale(Fraction(1, 100))
        logs.append((PolyX([coeff() for _ in range(rng.randint(1, 3))]), arg))
    return MLTP(mtp(rng.randint(0, 4)), logs)


def test_render_parse_round_trip_on_canonical_mltps():
    rng = random.Random(5)
    for _ in range(60):
        F = _random_mltp(rng)
        assert to_mltp(parse_expr(E.render(mltp_expr(F)))) == F


def test_reflect_examples_and_involution():
    F = to_mltp(parse_expr("sin(x)"))
    assert F.reflect().base == COS
    theta = to_mtp(parse_expr(THETA)).as_polyx()
    omega = to_mtp(parse_expr(THETA.replace("x", "(pi/2-x)"))).as_polyx()
    G = _F(THETA).reflect()
    by_arg = {a: m for m, a in G.logs}
    reflected_base = to_mtp(parse_expr("2/pi + (pi-2)/pi^3*(pi^2-4*(pi/2-x)^2)"))
    assert by_arg[reflected_base] == -omega
    assert theta.compose(PolyX((PI / 2, -1))) == omega
    rng = random.Random(8)
    for _ in range(30):
        F = _random_mltp(rng)
        assert F.reflect().reflect() == F


# -- derivative quotients -----------------------------------------------------------

def test_derivative_quotient_denominator_factors():
    Q = derivative_quotient(_F(THETA1), 3)
    kinds = [(f.kind, f.exponent) for f in Q.factors]
    assert kinds == [("x", 3), ("sin", 3), ("poly", 3)]
    poly = Q.factors[2].base.as_polyx()
    assert poly.scale(PI ** 3) == PolyX((PI ** 3, 0, -4 * (PI - 2)))
    Q = derivative_quotient(_G1(), 2)
    assert sorted((f.kind, f.exponent) for f in Q.factors) == [("cos", 2), ("poly", 2), ("poly", 2)]
    Q = derivative_quotient(to_mltp(parse_expr("sin(x) - x")), 1)
    assert Q.factors == () and Q.denominator() == MTP.constant(1)
    with pytest.raises(OrderTooLow):
        derivative_quotient(_F(THETA1), 2)


def test_derivative_quotient_matches_finite_differences():
    rng = random.Random(13)
    cases = [(_F(THETA1), 3), (_G1(), 2), (_F(THETA), 4)]
    for F, n in cases:
        Q = derivative_quotient(F, n)
        for _ in range(17):
            x = mpmath.mpf(rng.uniform(0.05, 1.3))
            fd = mpmath.diff(F.mp, x, n)
            assert abs(Q.mp(x) - fd) <= mpmath.mpf(10) ** -4 * abs(fd)


def test_derivative_quotient_random_mltps():
    rng = random.Random(17)
    for _ in range(15):
        F = _random_mltp(rng)
        n = F.K + 1 if F.K >= 0 else 1
        Q = derivative_quotient(F, n)
        x = mpmath.mpf(rng.uniform(0.1, 1.3))
        fd = mpmath.diff(F.mp, x, n)
        assert abs(Q.mp(x) - fd) <= mpmath.mpf(10) ** -4 * max(abs(fd), mpmath.mpf(10) ** -10)


# -- series at 0 ---------------------------------------------------------------------

def test_series_examples():
    s = series_at_zero(to_mltp(parse_expr("ln(sin(x)) - ln(x)")), 4)
    assert s.coefficients == tuple(const(v) for v in [0, 0, Fraction(-1, 6), 0, Fraction(-1, 180)])
    s = series_at_zero(_F(THETA1), 2)
    assert all(c == const(0) for c in s.coefficients)
    s = series_at_zero(_G1(), 2)
    assert s.coefficients[0] == const(0)
    g1 = ln(PI_EXPR / 2) / 5 - (2 * PI_EXPR - 6) / PI_EXPR
    assert sign_const(s.coefficients[1] - g1) == Sign.ZERO
    assert sign_const(s.coefficients[1]) == Sign.POSITIVE


def test_series_rejects_uncancelled_log():
    with pytest.raises(LogSingularity):
        series_at_zero(to_mltp(parse_expr("ln(x)")), 2)
    with pytest.raises(LogSingularity):
        series_at_zero(to_mltp(parse_expr("ln(sin(x)) - 2*ln(x)")), 2)


def test_series_matches_derivatives_near_zero():
    x0 = mpmath.mpf(10) ** -3
    for F in [_F(THETA1), _G1(), to_mltp(parse_expr("ln(sin(x)) - ln(x) + x^2*ln(cos(x)) + sin(x)^2"))]:
        s = series_at_zero(F, 9)
        mids = [enclose_const(c, 12, 64).mid for c in s.coefficients]
        coeffs = [mpmath.mpf(q.numerator) / q.denominator for q in mids]
        for j in range(5):
            approx = mpmath.fsum(coeffs[k] * mpmath.ff(k, j) * x0 ** (k - j) for k in range(j, 10))
            fd = mpmath.diff(F.mp, x0, j)
            assert abs(approx - fd) <= mpmath.mpf(10) ** -4 * max(abs(fd), mpmath.mpf(10) ** -12)
