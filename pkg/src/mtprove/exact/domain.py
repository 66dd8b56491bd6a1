"""Real intervals with endpoints in Q(pi)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .constexpr import pirat_from_json, pirat_text, pirat_to_json
from .enclosure import Enclosure
from .pipoly import PI, ZERO, PiRat

HALF_PI = PI / 2
BRACKET_DENOMINATOR = 10 ** 6


@dataclass(frozen=True)
class Interval:
    lo: PiRat
    hi: PiRat
    lo_closed: bool = False
    hi_closed: bool = False

    def __post_init__(self):
        object.__setattr__(self, "lo", PiRat.of(self.lo))
        object.__setattr__(self, "hi", PiRat.of(self.hi))

    @classmethod
    def open(cls, lo, hi) -> Interval:
        return cls(lo, hi, False, False)

    def starts_at_zero(self) -> bool:
        return self.lo.is_zero() and not self.lo_closed

    def rational_hull(self, denominator: int = BRACKET_DENOMINATOR) -> Enclosure:
        """Rational [lo_bar, hi_bar] containing the closed hull, rounded outward."""
        lo = self.lo.rational_value() if self.lo.is_rational() else \
            self.lo.enclose(8).rounded(denominator).lo
        hi = self.hi.rational_value() if self.hi.is_rational() else \
            self.hi.enclose(8).rounded(denominator).hi
        return Enclosure(lo, hi)

    def reflect(self) -> Interval:
        """Image under x -> pi/2 - x."""
        return Interval(HALF_PI - self.hi, HALF_PI - self.lo, self.hi_closed, self.lo_closed)

    def split(self, point: PiRat):
        left = Interval(self.lo, point, self.lo_closed, True)
        right = Interval(point, self.hi, False, self.hi_closed)
        return left, right

    def contains_strictly(self, point: PiRat) -> bool:
        return (point - self.lo).sign() > 0 and (self.hi - point).sign() > 0

    def within_quarter_circle(self) -> bool:
        """True when the interval lies in [0, pi/2]."""
        return self.lo.sign() >= 0 and (HALF_PI - self.hi).sign() >= 0

    def __str__(self):
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{left}{pirat_text(self.lo)}, {pirat_text(self.hi)}{right}"

    def to_json(self):
        return {"lo": pirat_to_json(self.lo), "hi": pirat_to_json(self.hi),
                "lo_closed": self.lo_closed, "hi_closed": self.hi_closed}

    @classmethod
    def from_json(cls, data) -> Interval:
        return cls(pirat_from_json(data["lo"]), pirat_from_json(data["hi"]),
                   bool(data["lo_closed"]), bool(data["hi_closed"]))
