"""Mixed logarithmic-trigonometric polynomials f + sum P_j * ln(f_j)."""

from __future__ import annotations

from fractions import Fraction

import mpmath

from ..errors import NotMLTP
from ..exact.constexpr import to_pirat
from ..exact.domain import HALF_PI
from ..exact.pipoly import ONE, PiPoly, PiRat
from ..exact.sign import Sign
from . import expr as E
from .mtp import COS, MTP, SIN, X as MX
from .polyx import PolyX


class MLTP:
    """``base + sum(multiplier * ln(argument))`` in a canonical arrangement.

    Log terms with structurally identical arguments are merged, zero
    multipliers dropped, ln(1) removed, and single-term arguments
    alpha*x^p*cos^q*sin^r (alpha > 0) split into ln alpha, ln x, ln cos, ln sin.
    Order of first appearance is kept so that output is deterministic.
    """

    __slots__ = ("base", "logs")

    def __init__(self, base: MTP = None, logs=()):
        self.base = base if base is not None else MTP()
        merged = {}
        for mult, arg in logs:
            for m, a in _split_argument(mult, arg):
                merged[a] = merged[a] + m if a in merged else m
        self.logs = tuple((m, a) for a, m in merged.items() if not m.is_zero())

    @property
    def K(self) -> int:
        """Largest multiplier degree; -1 when there are no log terms."""
        return max((m.degree for m, _ in self.logs), default=-1)

    def is_mtp(self) -> bool:
        return not self.logs

    def __eq__(self, other):
        if not isinstance(other, MLTP):
            return NotImplemented
        return self.base == other.base and self.logs == other.logs

    def __hash__(self):
        return hash((self.base, self.logs))

    def __add__(self, other):
        other = _as_mltp(other)
        return MLTP(self.base + other.base, self.logs + other.logs)

    def __neg__(self):
        return MLTP(-self.base, tuple((-m, a) for m, a in self.logs))

    def __sub__(self, other):
        return self + (-_as_mltp(other))

    def scale(self, value) -> MLTP:
        value = PiRat.of(value)
        return MLTP(self.base.scale(value), tuple((m.scale(value), a) for m, a in self.logs))

    def times_polyx(self, poly: PolyX) -> MLTP:
        return MLTP(self.base * poly, tuple((poly * m, a) for m, a in self.logs))

    def reflect(self) -> MLTP:
        """Substitute x -> pi/2 - x."""
        inner = PolyX((HALF_PI, -ONE))
        return MLTP(self.base.reflect(), tuple((m.compose(inner), a.reflect()) for m, a in self.logs))

    def mp(self, x):
        total = self.base.mp(x)
        for m, a in self.logs:
            total += m.mp(x) * mpmath.log(a.mp(x))
        return total

    def __repr__(self):
        return f"MLTP({self})"

    def __str__(self):
        parts = [] if self.base.is_zero() else [str(self.base)]
        parts += [f"({m})*ln({a})" for m, a in self.logs]
        return " + ".join(parts) if parts else "0"

    def to_json(self):
        return {"base": self.base.to_json(),
                "logs": [{"multiplier": m.to_json(), "argument": a.to_json()} for m, a in self.logs]}

    @classmethod
    def from_json(cls, data) -> MLTP:
        return cls(MTP.from_json(data["base"]),
                   [(PolyX.from_json(t["multiplier"]), MTP.from_json(t["argument"])) for t in data["logs"]])


def _as_mltp(value) -> MLTP:
    if isinstance(value, MLTP):
        return value
    if isinstance(value, MTP):
        return MLTP(value)
    return MLTP(MTP.constant(value))


def _split_argument(mult: PolyX, arg: MTP):
    if arg.is_zero():
        raise NotMLTP("ln of zero")
    if not arg.is_monomial():
        return [(mult, arg)]
    (p, q, r), alpha = arg.terms[0]
    if alpha.sign() != Sign.POSITIVE:
        return [(mult, arg)]
    out = []
    if alpha != ONE:
        out.append((mult, MTP.constant(alpha)))
    for exponent, atom in ((p, MX), (q, COS), (r, SIN)):
        if exponent:
            out.append((mult.scale(exponent), atom))
    return out


# -- conversion from expressions ---------------------------------------------------

def _constant(e: E.Expr) -> PiRat:
    try:
        value = to_pirat(E.to_const(e))
    except (ValueError, ZeroDivisionError) as exc:
        raise NotMLTP(f"not an exact constant: {exc}") from exc
    if value is None:
        raise NotMLTP("constant involves ln where an element of Q(pi) is needed")
    return value


def to_mtp(e: E.Expr) -> MTP:
    """Convert an ln-free expression into an MTP."""
    if not E.has_x(e) and not isinstance(e, (E.Sin, E.Cos)):
        return MTP.constant(_constant(e))
    if isinstance(e, E.Var):
        return MX
    if isinstance(e, E.Add):
        return to_mtp(e.left) + to_mtp(e.right)
    if isinstance(e, E.Sub):
        return to_mtp(e.left) - to_mtp(e.right)
    if isinstance(e, E.Mul):
        return to_mtp(e.left) * to_mtp(e.right)
    if isinstance(e, E.Neg):
        return -to_mtp(e.arg)
    if isinstance(e, E.Div):
        if E.has_x(e.right):
            raise NotMLTP("division by a non-constant")
        return to_mtp(e.left).scale(ONE / _nonzero(_constant(e.right)))
    if isinstance(e, E.Pow):
        return to_mtp(e.base) ** e.exponent
    if isinstance(e, (E.Sin, E.Cos)):
        if e.arg != E.X:
            raise NotMLTP("sin and cos must be applied to x itself")
        return SIN if isinstance(e, E.Sin) else COS
    if isinstance(e, E.VarPow):
        raise NotMLTP("variable exponent outside ln")
    raise NotMLTP(f"{type(e).__name__} is not allowed in an MTP")


def _nonzero(value: PiRat) -> PiRat:
    if value.is_zero():
        raise NotMLTP("division by zero")
    return value


def _polyx_of(e: E.Expr) -> PolyX:
    poly = to_mtp(e).as_polyx()
    if poly is None:
        raise NotMLTP("exponent must be a polynomial in x")
    return poly


def log_parts(u: E.Expr):
    """ln(u) as a list of (multiplier, MTP argument), splitting over products,
    quotients and powers."""
    if not E.has_x(u):
        return [(PolyX.constant(1), MTP.constant(_constant(u)))]
    if isinstance(u, E.Mul):
        return log_parts(u.left) + log_parts(u.right)
    if isinstance(u, E.Div):
        return log_parts(u.left) + [(-m, a) for m, a in log_parts(u.right)]
    if isinstance(u, E.Pow):
        return [(m.scale(u.exponent), a) for m, a in log_parts(u.base)]
    if isinstance(u, E.VarPow):
        poly = _polyx_of(u.exponent)
        return [(poly * m, a) for m, a in log_parts(u.base)]
    return [(PolyX.constant(1), to_mtp(u))]


def to_mltp(e: E.Expr) -> MLTP:
    if isinstance(e, E.Ln):
        return MLTP(MTP(), log_parts(e.arg))
    if isinstance(e, E.Add):
        return to_mltp(e.left) + to_mltp(e.right)
    if isinstance(e, E.Sub):
        return to_mltp(e.left) - to_mltp(e.right)
    if isinstance(e, E.Neg):
        return -to_mltp(e.arg)
    if isinstance(e, E.Mul):
        a, b = to_mltp(e.left), to_mltp(e.right)
        if a.logs and b.logs:
            raise NotMLTP("product of two logarithms")
        if a.logs:
            a, b = b, a
        if not b.logs:
            return MLTP(a.base * b.base)
        poly = a.base.as_polyx()
        if poly is None:
            raise NotMLTP("ln multiplied by a trigonometric factor")
        return b.times_polyx(poly)
    if isinstance(e, E.Div):
        if E.has_x(e.right) or _has_ln(e.right):
            if not _has_ln(e.left) and not _has_ln(e.right):
                return MLTP(to_mtp(e))
            raise NotMLTP("division by a non-constant")
        return to_mltp(e.left).scale(ONE / _nonzero(_constant(e.right)))
    if isinstance(e, E.Pow):
        inner = to_mltp(e.base)
        if inner.logs and e.exponent not in (0, 1):
            raise NotMLTP("power of a logarithm")
        if e.exponent == 0:
            return MLTP(MTP.constant(1))
        return inner if inner.logs else MLTP(inner.base ** e.exponent)
    return MLTP(to_mtp(e))


def _has_ln(e: E.Expr) -> bool:
    if isinstance(e, (E.Ln, E.VarPow)):
        return True
    return any(_has_ln(c) for c in E.children(e))


# -- conversion back to expressions -------------------------------------------------

def _pipoly_expr(p: PiPoly) -> E.Expr:
    out = None
    for k in range(p.degree, -1, -1):
        c = p.coefficients[k]
        if c == 0:
            continue
        mag = abs(c)
        power = None if k == 0 else (E.PI_SYM if k == 1 else E.Pow(E.PI_SYM, k))
        if power is None:
            term = E.Num(mag)
        elif mag == 1:
            term = power
        else:
            term = E.Mul(E.Num(mag), power)
        if out is None:
            out = E.Neg(term) if c < 0 else term
        else:
            out = E.Sub(out, term) if c < 0 else E.Add(out, term)
    return out if out is not None else E.Num(Fraction(0))


def pirat_expr(value: PiRat) -> E.Expr:
    num = _pipoly_expr(value.num)
    if value.den.is_constant():
        return num
    return E.Div(num, _pipoly_expr(value.den))


def mtp_expr(f: MTP) -> E.Expr:
    out = None
    for (p, q, r), c in f.terms:
        factors = []
        for exponent, atom in ((p, E.X), (q, E.Cos(E.X)), (r, E.Sin(E.X))):
            if exponent:
                factors.append(atom if exponent == 1 else E.Pow(atom, exponent))
        term = None if (factors and c == ONE) else pirat_expr(c)
        for f_ in factors:
            term = f_ if term is None else E.Mul(term, f_)
        out = term if out is None else E.Add(out, term)
    return out if out is not None else E.Num(Fraction(0))


def polyx_expr(poly: PolyX) -> E.Expr:
    return mtp_expr(MTP.from_polyx(poly))


def mltp_expr(F: MLTP) -> E.Expr:
    out = None if F.base.is_zero() else mtp_expr(F.base)
    for m, a in F.logs:
        log = E.Ln(mtp_expr(a))
        if m == PolyX.constant(-1) and out is not None:
            out = E.Sub(out, log)
            continue
        term = log if m == PolyX.constant(1) else E.Mul(polyx_expr(m), log)
        out = term if out is None else E.Add(out, term)
    return out if out is not None else E.Num(Fraction(0))
