"""Expression trees in one variable x, with rendering, evaluation and derivatives."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from ..exact.constexpr import ConstExpr, const, ln as const_ln
from ..exact.pipoly import PI


class Expr:
    __slots__ = ()

    def __add__(self, other):
        return Add(self, _lift(other))

    def __radd__(self, other):
        return Add(_lift(other), self)

    def __sub__(self, other):
        return Sub(self, _lift(other))

    def __rsub__(self, other):
        return Sub(_lift(other), self)

    def __mul__(self, other):
        return Mul(self, _lift(other))

    def __rmul__(self, other):
        return Mul(_lift(other), self)

    def __truediv__(self, other):
        return Div(self, _lift(other))

    def __rtruediv__(self, other):
        return Div(_lift(other), self)

    def __neg__(self):
        return Neg(self)

    def __pow__(self, n):
        if isinstance(n, Expr):
            return VarPow(self, n)
        return Pow(self, n)


@dataclass(frozen=True, slots=True)
class Num(Expr):
    value: Fraction


@dataclass(frozen=True, slots=True)
class Pi(Expr):
    pass


@dataclass(frozen=True, slots=True)
class Var(Expr):
    pass


@dataclass(frozen=True, slots=True)
class Add(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, slots=True)
class Sub(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, slots=True)
class Mul(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, slots=True)
class Div(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, slots=True)
class Neg(Expr):
    arg: Expr


@dataclass(frozen=True, slots=True)
class Pow(Expr):
    base: Expr
    exponent: int


@dataclass(frozen=True, slots=True)
class VarPow(Expr):
    """base ** exponent with an expression exponent; meaningful for base > 0."""
    base: Expr
    exponent: Expr


@dataclass(frozen=True, slots=True)
class Sin(Expr):
    arg: Expr


@dataclass(frozen=True, slots=True)
class Cos(Expr):
    arg: Expr


@dataclass(frozen=True, slots=True)
class Ln(Expr):
    arg: Expr


X = Var()
PI_SYM = Pi()
_BINARY = (Add, Sub, Mul, Div)
_FUNCS = {Sin: "sin", Cos: "cos", Ln: "ln"}


def _lift(value) -> Expr:
    if isinstance(value, Expr):
        return value
    if isinstance(value, (int, Fraction)):
        return Num(Fraction(value))
    raise TypeError(f"cannot use {type(value).__name__} in an expression")


def num(value) -> Num:
    return Num(Fraction(value))


def children(e: Expr):
    if isinstance(e, _BINARY):
        return (e.left, e.right)
    if isinstance(e, (Neg, Sin, Cos, Ln)):
        return (e.arg,)
    if isinstance(e, Pow):
        return (e.base,)
    if isinstance(e, VarPow):
        return (e.base, e.exponent)
    return ()


def has_x(e: Expr) -> bool:
    if isinstance(e, Var):
        return True
    return any(has_x(c) for c in children(e))


def substitute(e: Expr, value: Expr) -> Expr:
    """Replace every x in e by value."""
    if isinstance(e, Var):
        return value
    if isinstance(e, (Num, Pi)):
        return e
    if isinstance(e, _BINARY):
        return type(e)(substitute(e.left, value), substitute(e.right, value))
    if isinstance(e, Pow):
        return Pow(substitute(e.base, value), e.exponent)
    if isinstance(e, VarPow):
        return VarPow(substitute(e.base, value), substitute(e.exponent, value))
    return type(e)(substitute(e.arg, value))


# -- rendering -------------------------------------------------------------------
# precedence levels: 1 sum, 2 product, 3 unary minus, 4 power, 5 atom

def render(e: Expr) -> str:
    return _render(e, 0)


def _wrap(text: str, own: int, ctx: int) -> str:
    return f"({text})" if own < ctx else text


def _render(e: Expr, ctx: int) -> str:
    if isinstance(e, Num):
        v = e.value
        if v < 0:
            return f"({_render(Num(-v), 3)})" if ctx > 0 else f"-{_render(Num(-v), 3)}"
        if v.denominator == 1:
            return str(v.numerator)
        # a literal a/b parses as one token unless a power follows
        return _wrap(f"{v.numerator}/{v.denominator}", 4, ctx)
    if isinstance(e, Pi):
        return "pi"
    if isinstance(e, Var):
        return "x"
    if isinstance(e, (Add, Sub)):
        op = " + " if isinstance(e, Add) else " - "
        return _wrap(_render(e.left, 1) + op + _render(e.right, 2), 1, ctx)
    if isinstance(e, (Mul, Div)):
        op = "*" if isinstance(e, Mul) else "/"
        left, right = _render(e.left, 2), _render(e.right, 3)
        if left[-1].isdigit() and right[0].isdigit():
            # keep "a/b" from fusing into a single rational literal
            right = f"({right})"
        return _wrap(left + op + right, 2, ctx)
    if isinstance(e, Neg):
        return _wrap("-" + _render(e.arg, 3), 3, ctx)
    if isinstance(e, Pow):
        return _wrap(f"{_render(e.base, 5)}^{e.exponent}", 4, ctx)
    if isinstance(e, VarPow):
        return _wrap(f"{_render(e.base, 5)}^({_render(e.exponent, 0)})", 4, ctx)
    return f"{_FUNCS[type(e)]}({_render(e.arg, 0)})"


# -- evaluation ------------------------------------------------------------------

def evaluate(e: Expr, x):
    """Evaluate with mpmath at the current working precision."""
    if isinstance(e, Num):
        return mpmath.mpf(e.value.numerator) / e.value.denominator
    if isinstance(e, Pi):
        return +mpmath.pi
    if isinstance(e, Var):
        return x
    if isinstance(e, Add):
        return evaluate(e.left, x) + evaluate(e.right, x)
    if isinstance(e, Sub):
        return evaluate(e.left, x) - evaluate(e.right, x)
    if isinstance(e, Mul):
        return evaluate(e.left, x) * evaluate(e.right, x)
    if isinstance(e, Div):
        return evaluate(e.left, x) / evaluate(e.right, x)
    if isinstance(e, Neg):
        return -evaluate(e.arg, x)
    if isinstance(e, Pow):
        return evaluate(e.base, x) ** e.exponent
    if isinstance(e, VarPow):
        return mpmath.power(evaluate(e.base, x), evaluate(e.exponent, x))
    if isinstance(e, Sin):
        return mpmath.sin(evaluate(e.arg, x))
    if isinstance(e, Cos):
        return mpmath.cos(evaluate(e.arg, x))
    return mpmath.log(evaluate(e.arg, x))


def to_const(e: Expr) -> ConstExpr:
    """Convert an x-free expression into an exact constant."""
    if isinstance(e, Num):
        return const(e.value)
    if isinstance(e, Pi):
        return const(PI)
    if isinstance(e, Var):
        raise ValueError("expression depends on x")
    if isinstance(e, Add):
        return to_const(e.left) + to_const(e.right)
    if isinstance(e, Sub):
        return to_const(e.left) - to_const(e.right)
    if isinstance(e, Mul):
        return to_const(e.left) * to_const(e.right)
    if isinstance(e, Div):
        return to_const(e.left) / to_const(e.right)
    if isinstance(e, Neg):
        return -to_const(e.arg)
    if isinstance(e, Pow):
        return to_const(e.base) ** e.exponent
    if isinstance(e, Ln):
        return const_ln(to_const(e.arg))
    raise ValueError(f"{type(e).__name__} is not an exact constant form")


# -- differentiation -------------------------------------------------------------

ZERO_E = Num(Fraction(0))
ONE_E = Num(Fraction(1))


def _is_num(e, value) -> bool:
    return isinstance(e, Num) and e.value == value


def _add(a, b):
    if _is_num(a, 0):
        return b
    if _is_num(b, 0):
        return a
    return Add(a, b)


def _sub(a, b):
    if _is_num(b, 0):
        return a
    if _is_num(a, 0):
        return _neg(b)
    return Sub(a, b)


def _neg(a):
    if isinstance(a, Num):
        return Num(-a.value)
    if isinstance(a, Neg):
        return a.arg
    return Neg(a)


def _mul(a, b):
    if _is_num(a, 0) or _is_num(b, 0):
        return ZERO_E
    if _is_num(a, 1):
        return b
    if _is_num(b, 1):
        return a
    if isinstance(a, Num) and isinstance(b, Num):
        return Num(a.value * b.value)
    return Mul(a, b)


def _div(a, b):
    if _is_num(a, 0):
        return ZERO_E
    if _is_num(b, 1):
        return a
    return Div(a, b)


def differentiate(e: Expr) -> Expr:
    if isinstance(e, (Num, Pi)):
        return ZERO_E
    if isinstance(e, Var):
        return ONE_E
    if isinstance(e, Add):
        return _add(differentiate(e.left), differentiate(e.right))
    if isinstance(e, Sub):
        return _sub(differentiate(e.left), differentiate(e.right))
    if isinstance(e, Mul):
        return _add(_mul(differentiate(e.left), e.right), _mul(e.left, differentiate(e.right)))
    if isinstance(e, Div):
        du, dv = differentiate(e.left), differentiate(e.right)
        if _is_num(dv, 0):
            return _div(du, e.right)
        return _div(_sub(_mul(du, e.right), _mul(e.left, dv)), Pow(e.right, 2))
    if isinstance(e, Neg):
        return _neg(differentiate(e.arg))
    if isinstance(e, Pow):
        n = e.exponent
        if n == 0:
            return ZERO_E
        inner = e.base if n == 2 else (ONE_E if n == 1 else Pow(e.base, n - 1))
        return _mul(_mul(Num(Fraction(n)), inner), differentiate(e.base))
    if isinstance(e, VarPow):
        du, dv = differentiate(e.base), differentiate(e.exponent)
        rate = _add(_mul(dv, Ln(e.base)), _div(_mul(e.exponent, du), e.base))
        return _mul(e, rate)
    if isinstance(e, Sin):
        return _mul(Cos(e.arg), differentiate(e.arg))
    if isinstance(e, Cos):
        return _neg(_mul(Sin(e.arg), differentiate(e.arg)))
    return _div(differentiate(e.arg), e.arg)
