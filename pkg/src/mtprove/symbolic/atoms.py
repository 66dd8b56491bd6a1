"""Split log arguments into elementary factors.

Each argument f_j is written as alpha * x^a * sin^b * cos^d * g with g either
an x-polynomial normalised to |g(0)| = 1 or a general MTP remainder. Equal
factors from different arguments share one multiplier.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import NotMLTP
from ..exact.pipoly import ONE, PiRat
from ..exact.sign import Sign
from .mltp import MLTP
from .mtp import COS, MTP, SIN, X
from .polyx import PolyX

KINDS = ("x", "sin", "cos", "poly", "mtp", "const")


@dataclass(frozen=True)
class Atom:
    kind: str
    value: object  # MTP for function atoms, PiRat for "const"

    def mtp(self) -> MTP:
        if self.kind == "const":
            return MTP.constant(self.value)
        return self.value


X_ATOM = Atom("x", X)
SIN_ATOM = Atom("sin", SIN)
COS_ATOM = Atom("cos", COS)


def split_argument(arg: MTP):
    """List of (Atom, exponent) whose product is ``arg``."""
    if arg.is_zero():
        raise NotMLTP("ln of zero")
    if arg.is_constant():
        return [(Atom("const", arg.constant_value()), 1)]
    out = []
    u = arg.cos_reduced()
    a = u.x_valuation()
    b = min(r for (_, _, r), _ in u.terms)
    u = u.shift(-a, 0, -b)
    v = u.sin_reduced()
    d = min(q for (_, q, _), _ in v.terms)
    if d:
        u = v.shift(0, -d, 0)
    for atom, e in ((X_ATOM, a), (SIN_ATOM, b), (COS_ATOM, d)):
        if e:
            out.append((atom, e))
    if u.is_constant():
        alpha = u.constant_value()
    else:
        g = u.as_polyx()
        if g is not None:
            g0 = g.coefficient(0)
            if g0.is_zero():
                raise NotMLTP("internal error: x power not extracted")
            alpha = g0 if g0.sign() == Sign.POSITIVE else -g0
            out.append((Atom("poly", MTP.from_polyx(g / alpha)), 1))
        else:
            alpha = ONE
            out.append((Atom("mtp", u), 1))
    if alpha != ONE:
        out.append((Atom("const", alpha), 1))
    return out


def collect_atoms(F: MLTP):
    """Ordered list of (Atom, multiplier PolyX) with merged multipliers."""
    acc = {}
    for mult, arg in F.logs:
        for atom, e in split_argument(arg):
            m = mult.scale(e)
            acc[atom] = acc[atom] + m if atom in acc else m
    return [(atom, m) for atom, m in acc.items() if not m.is_zero()]
