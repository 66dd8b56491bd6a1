"""Exact numbers: rationals, Q(pi), enclosures and ln-augmented constants."""

from .constexpr import (
    Add, ConstExpr, Div, Lit, Ln, Mul, Neg, PI_EXPR, Sub, certified_enclosure, const,
    enclose_const, ln, log_normal_form, sign_const, simplify, to_pirat,
)
from .domain import HALF_PI, Interval
from .enclosure import Enclosure
from .pi import pi_enclosure
from .pipoly import ONE, PI, ZERO, PiPoly, PiRat, poly_gcd
from .sign import Sign

__all__ = [
    "Add", "ConstExpr", "Div", "Enclosure", "HALF_PI", "Interval", "Lit", "Ln", "Mul",
    "Neg", "ONE", "PI", "PI_EXPR", "PiPoly", "PiRat", "Sign", "Sub", "ZERO",
    "certified_enclosure", "const", "enclose_const", "ln", "log_normal_form",
    "pi_enclosure", "poly_gcd", "sign_const", "simplify", "to_pirat",
]
