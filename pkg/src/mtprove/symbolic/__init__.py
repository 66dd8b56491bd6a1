"""Expressions, MTP/MLTP canonical forms, derivative quotients and series at 0."""

from .expr import Expr, differentiate, evaluate, render
from .mltp import MLTP, mltp_expr, to_mltp, to_mtp
from .mtp import COS, MTP, SIN
from .parser import parse_expr
from .polyx import PolyX
from .quotient import Factor, Quotient, derivative_quotient
from .series import Series, series_at_zero

__all__ = [
    "COS", "Expr", "Factor", "MLTP", "MTP", "PolyX", "Quotient", "SIN", "Series",
    "derivative_quotient", "differentiate", "evaluate", "mltp_expr", "parse_expr",
    "render", "series_at_zero", "to_mltp", "to_mtp",
]
