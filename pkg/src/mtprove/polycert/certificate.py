"""Sign certificates: replayable witnesses that a polynomial keeps one sign."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..exact.domain import Interval
from ..exact.sign import Sign
from ..symbolic.polyx import PolyX

TACTICS = ("MonomialEndpoint", "PairGrouping", "QuadraticVertex", "Sturm", "Zero")
_SIGN_NAMES = {Sign.POSITIVE: "positive", Sign.NEGATIVE: "negative", Sign.ZERO: "zero"}
_SIGN_BACK = {v: k for k, v in _SIGN_NAMES.items()}


def sign_name(s: Sign) -> str:
    return _SIGN_NAMES[s]


def sign_from_name(name: str) -> Sign:
    return _SIGN_BACK[name]


@dataclass(frozen=True)
class SignCertificate:
    """Claim: ``claimed * polynomial(x) > 0`` on ``interval`` (``>= 0`` when not strict).

    ``x_power`` records an x^j factor divided out before the tactic ran; the
    tactic's witness then concerns the quotient on the closed rational hull.
    """

    polynomial: PolyX
    interval: Interval
    claimed: Sign
    strict: bool
    tactic: str
    witness: dict = field(default_factory=dict)
    margin: Fraction = Fraction(0)
    x_power: int = 0

    def to_json(self):
        return {
            "polynomial": self.polynomial.to_json(),
            "interval": self.interval.to_json(),
            "claimed": sign_name(self.claimed),
            "strict": self.strict,
            "tactic": self.tactic,
            "x_power": self.x_power,
            "witness": self.witness,
            "margin": f"{self.margin.numerator}/{self.margin.denominator}",
        }

    @classmethod
    def from_json(cls, data) -> SignCertificate:
        return cls(
            polynomial=PolyX.from_json(data["polynomial"]),
            interval=Interval.from_json(data["interval"]),
            claimed=sign_from_name(data["claimed"]),
            strict=bool(data["strict"]),
            tactic=str(data["tactic"]),
            witness=data["witness"],
            margin=Fraction(data["margin"]),
            x_power=int(data["x_power"]),
        )
