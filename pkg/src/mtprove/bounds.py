"""Taylor truncations of sin and cos as one-sided bounds, and MTP minorants.

A Maclaurin partial sum through degree d is a lower bound exactly when the
first omitted term (degree m = d + 2) is positive. The tail is alternating
with decreasing terms while x^2 < (m + 1)(m + 2), which gives the radius.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .errors import CannotCertify, ParityMismatch, RadiusExceeded, SignUndecided, UndecidableAtBudget
from .exact.domain import Interval
from .exact.pipoly import PiRat
from .exact.sign import Sign
from .polycert import SignCertificate, certify_sign
from .symbolic.mtp import MTP
from .symbolic.polyx import PolyX

LOWER, UPPER = "lower", "upper"
DEFAULT_DEGREE_BUDGET = 6


@dataclass(frozen=True)
class TruncationBound:
    func: str
    included_degree: int
    direction: str
    poly: PolyX
    radius_sq: int

    def valid_on(self, hull_hi: Fraction) -> bool:
        return hull_hi * hull_hi < self.radius_sq

    def to_json(self):
        return {"func": self.func, "degree": self.included_degree,
                "direction": self.direction, "radius_sq": self.radius_sq}


def _term_sign(func: str, k: int) -> int:
    return (-1) ** ((k - 1) // 2) if func == "sin" else (-1) ** (k // 2)


def truncation(func: str, included_degree: int) -> TruncationBound:
    if func not in ("sin", "cos"):
        raise ValueError(f"unknown function {func}")
    if included_degree < 0 or (included_degree % 2 == 0) != (func == "cos"):
        raise ParityMismatch(f"{func} truncations need {'even' if func == 'cos' else 'odd'} degree")
    coeffs = [Fraction(0)] * (included_degree + 1)
    for k in range(1 if func == "sin" else 0, included_degree + 1, 2):
        coeffs[k] = Fraction(_term_sign(func, k), factorial(k))
    m = included_degree + 2
    direction = LOWER if _term_sign(func, m) > 0 else UPPER
    return TruncationBound(func, included_degree, direction, PolyX(coeffs), (m + 1) * (m + 2))


def catalog_degrees(func: str, direction: str, upto: int = 13):
    start = 1 if func == "sin" else 0
    return [d for d in range(start, upto + 1, 2) if truncation(func, d).direction == direction]


def choose_truncation(func: str, direction: str, level: int, degree_budget: int):
    """The level-th valid truncation, or the best one within the budget; None if none fit."""
    options = [d for d in catalog_degrees(func, direction)[:level] if d <= degree_budget]
    return truncation(func, options[-1]) if options else None


@dataclass(frozen=True)
class MinorantPiece:
    """coefficient(x) * cos^q sin^r bounded by coefficient * cos_bound^q * sin_bound^r.

    ``zero`` marks a nonnegative piece bounded below by 0.
    """
    q: int
    r: int
    coefficient: PolyX
    sign_certificate: SignCertificate
    cos_bound: TruncationBound = None
    sin_bound: TruncationBound = None
    nonneg: tuple = ()
    zero: bool = False

    def contribution(self) -> PolyX:
        if self.zero:
            return PolyX()
        out = self.coefficient
        if self.q:
            out = out * self.cos_bound.poly ** self.q
        if self.r:
            out = out * self.sin_bound.poly ** self.r
        return out


@dataclass(frozen=True)
class Minorant:
    target: MTP
    interval: Interval
    pieces: tuple = field(default_factory=tuple)

    @property
    def poly(self) -> PolyX:
        total = PolyX()
        for piece in self.pieces:
            total = total + piece.contribution()
        return total

    def bounds_used(self):
        out = []
        for piece in self.pieces:
            for b in (piece.cos_bound, piece.sin_bound):
                if b is not None and b not in out:
                    out.append(b)
        return out


def _coefficient_pieces(poly: PolyX, interval: Interval):
    """[(PolyX, sign, certificate)] covering poly; splits into monomials when needed."""
    for want in (Sign.POSITIVE, Sign.NEGATIVE):
        try:
            return [(poly, want, certify_sign(poly, interval, want, strict=False))]
        except CannotCertify:
            pass
    out = []
    for k, a in enumerate(poly.coeffs):
        if a.is_zero():
            continue
        mono = PolyX.monomial(a, k)
        try:
            want = a.sign()
            out.append((mono, want, certify_sign(mono, interval, want, strict=False)))
        except (CannotCertify, UndecidableAtBudget) as exc:
            raise SignUndecided(f"sign of coefficient of x^{k} undecided") from exc
    return out


def polynomial_minorant(g: MTP, interval: Interval, degree_budget: int = DEFAULT_DEGREE_BUDGET,
                        level: int = 1) -> Minorant:
    """A polynomial L with L <= g on the interval, which must lie in (0, pi/2]."""
    if interval.lo.sign() == Sign.NEGATIVE or not interval.within_quarter_circle():
        raise RadiusExceeded("minorants are built only inside (0, pi/2]")
    hull_hi = interval.rational_hull().hi
    pieces = []
    for (q, r), coeff in g.trig_groups().items():
        for poly, want, cert in _coefficient_pieces(coeff, interval):
            if q == 0 and r == 0:
                pieces.append(MinorantPiece(0, 0, poly, cert))
                continue
            direction = LOWER if want == Sign.POSITIVE else UPPER
            cb = choose_truncation("cos", direction, level, degree_budget) if q else None
            sb = choose_truncation("sin", direction, level, degree_budget) if r else None
            if (q and cb is None) or (r and sb is None):
                if direction == UPPER:
                    raise RadiusExceeded("no upper truncation within the degree budget")
                pieces.append(MinorantPiece(q, r, poly, cert, zero=True))
                continue
            for b in (cb, sb):
                if b is not None and not b.valid_on(hull_hi):
                    raise RadiusExceeded(f"{b.func} truncation of degree {b.included_degree} "
                                         f"is not valid up to {float(hull_hi):.6g}")
            nonneg = []
            if direction == LOWER and q + r >= 2:
                try:
                    for b in (cb, sb):
                        if b is not None:
                            nonneg.append(certify_sign(b.poly, interval, Sign.POSITIVE, strict=False))
                except CannotCertify:
                    pieces.append(MinorantPiece(q, r, poly, cert, zero=True))
                    continue
            pieces.append(MinorantPiece(q, r, poly, cert, cb, sb, tuple(nonneg)))
    return Minorant(g, interval, tuple(pieces))
