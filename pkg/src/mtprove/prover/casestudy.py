"""The sine-ratio inequality with a cubic exponent, run end to end.

The shipped script reduces to one MLTP, splits at the root c of the cubic
side condition, proves the left half with a quadratic multiplier and a
third derivative, and proves the right half after reflection with a linear
multiplier and a second derivative. The named polynomials of the hand
proof are read back out of the certificate, not recomputed on the side.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from ..exact import PI
from ..exact.constexpr import const_from_json, const_to_json, pirat_from_json, pirat_to_json
from ..exact.domain import HALF_PI, Interval
from ..exact.pipoly import ZERO, PiRat
from ..exact.sign import Sign
from ..polycert import SignCertificate, certify_sign, quadratic_minimum, tactic_pair_grouping
from ..symbolic.mtp import MTP
from ..symbolic.polyx import PolyX
from .certificate import Certificate, Node
from .engine import Config, prove
from .problem import ProblemFile, parse_problem

PROBLEM_DIR = Path(__file__).resolve().parent.parent / "problems"
H = PiRat.of(Fraction(23, 100))


def load_problem(name: str) -> ProblemFile:
    path = PROBLEM_DIR / f"{name}.mtp"
    return parse_problem(path.read_text(encoding="utf-8"))


@dataclass(frozen=True)
class Bound:
    """A named claim ``poly > threshold``, a displayed value and its certificate."""

    label: str
    threshold: PiRat
    value: PiRat = None
    certificate: SignCertificate = None

    @property
    def holds(self) -> bool:
        return self.value is None or (self.value - self.threshold).sign() == Sign.POSITIVE

    def to_json(self):
        out = {"label": self.label, "threshold": pirat_to_json(self.threshold), "holds": self.holds}
        if self.value is not None:
            out["value"] = pirat_to_json(self.value)
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        return out


@dataclass
class Intermediates:
    c: PiRat
    c1: PiRat
    A: PolyX
    B: PolyX
    C: PolyX
    P14: PolyX
    P: PolyX
    Q: PolyX
    T10: PolyX
    phi1: PolyX
    phi2: PolyX
    psi: tuple
    f1_limits: tuple
    g1_limits: tuple
    a_certificate: SignCertificate
    grouping: dict
    pair_checks: list = field(default_factory=list)
    bounds: dict = field(default_factory=dict)

    @property
    def a_bound(self) -> PiRat:
        """Upper bound for A on [0, c], read from the endpoint certificate of -A."""
        return -pirat_from_json(self.a_certificate.witness["bound"])

    def polynomials(self):
        named = {"A": self.A, "B": self.B, "C": self.C, "P14": self.P14, "P": self.P, "Q": self.Q,
                 "T10": self.T10, "phi1": self.phi1, "phi2": self.phi2}
        named.update({f"psi{i + 1}": p for i, p in enumerate(self.psi)})
        return named

    def to_json(self):
        return {
            "constants": {"c": pirat_to_json(self.c), "c1": pirat_to_json(self.c1)},
            "polynomials": {k: p.to_json() for k, p in self.polynomials().items()},
            "limits": {"F1": [const_to_json(v) for v in self.f1_limits],
                       "G1": [const_to_json(v) for v in self.g1_limits]},
            "A_bound": pirat_to_json(self.a_bound),
            "pair_checks": [b.to_json() for b in self.pair_checks],
            "bounds": {k: b.to_json() for k, b in self.bounds.items()},
        }


def _walk_kind(root: Node, kind: str):
    return [n for _, n in root.walk() if n.kind == kind]


def _groups(node: Node):
    return MTP.from_json(node.data["target"]).trig_groups()


def _case_one(theorem: Node, c: PiRat):
    q = theorem.data["quotient"]
    groups = MTP.from_json(q["numerator"]).trig_groups()
    A = groups[(0, 3)] / 2
    B = groups[(1, 0)]
    (poly_factor,) = [f for f in q["factors"] if f["kind"] == "poly"]
    C = MTP.from_json(poly_factor["base"]).as_polyx() ** 3
    minorant = PolyX.from_json(theorem.children[-1].data["minorant"])
    P14 = minorant.shift_down(9) * 864000
    interval = Interval(ZERO, c, False, True)
    a_cert = certify_sign(A, interval, Sign.NEGATIVE, tactics=("MonomialEndpoint",))
    hull = interval.rational_hull()
    witness, _ = tactic_pair_grouping(P14, (hull.lo, hull.hi))
    c_bar = PiRat.of(hull.hi)
    pairs = []
    for hi, lo in witness["groups"]:
        value = P14.coefficient(hi) * c_bar ** (hi - lo) + P14.coefficient(lo)
        pairs.append(Bound(f"a{hi}*c^{hi - lo} + a{lo}", ZERO, value))
    return A, B, C, P14, a_cert, witness, pairs


def _case_two(theorem: Node, c1: PiRat):
    trig = theorem.children[-1]
    groups = _groups(trig)
    P, Q = groups[(2, 0)], -groups[(0, 2)]
    T10 = PolyX.from_json(trig.data["minorant"])
    # P = phi1 + 4 x^3 (pi - 2) ((40 - 20 pi) x^3 + phi2)
    phi1 = PolyX([P.coefficient(k) for k in range(3)])
    head = (P - phi1).shift_down(3) / (4 * (PI - 2))
    phi2 = head - PolyX.monomial(40 - 20 * PI, 3)
    psi = tuple(PolyX([T10.coefficient(k) if k in ks else ZERO for k in range(11)])
                for ks in ((10, 9), (8, 7, 6), (5, 4, 3), (2, 1, 0)))
    return P, Q, T10, phi1, phi2, psi


def _case_two_bounds(P, T10, phi1, phi2, psi, c1):
    h_open = Interval(ZERO, H, False, False)
    c1_closed = Interval(ZERO, c1, True, True)
    out = {}
    _, y1 = quadratic_minimum(phi1, ZERO, c1)
    _, y2 = quadratic_minimum(phi2, ZERO, c1)
    out["y1"] = Bound("y1 = min phi1 on [0, c1]", PiRat.of(271), y1,
                      certify_sign(phi1 - 271, c1_closed, Sign.POSITIVE, tactics=("QuadraticVertex",)))
    out["y2"] = Bound("y2 = phi2(c1)", PiRat.of(-815), y2,
                      certify_sign(phi2 + 815, c1_closed, Sign.POSITIVE, tactics=("QuadraticVertex",)))
    chain = 271 - 4 * H ** 3 * (PI - 2) * ((20 * PI - 40) * H ** 3 + 815)
    out["P"] = Bound("P on (0, 23/100)", PiRat.of(225), chain,
                     certify_sign(P - 225, h_open, Sign.POSITIVE))
    out["psi1"] = Bound("psi1", ZERO, None, certify_sign(psi[0], h_open, Sign.POSITIVE))
    out["psi2"] = Bound("psi2", ZERO, None, certify_sign(psi[1], h_open, Sign.POSITIVE))
    inner3 = psi[2].shift_down(3)
    out["psi3"] = Bound("psi3", PiRat.of(-27), inner3.evaluate(H) * H ** 3,
                        certify_sign(psi[2] + 27, h_open, Sign.POSITIVE))
    out["psi4"] = Bound("psi4", PiRat.of(54), psi[3].evaluate(H),
                        certify_sign(psi[3] - 54, h_open, Sign.POSITIVE))
    out["T10"] = Bound("T10 = psi1 + psi2 + psi3 + psi4", PiRat.of(27), None,
                       certify_sign(T10 - 27, h_open, Sign.POSITIVE))
    return out


def nishizawa_case_study(cfg: Config = Config()):
    """Prove the shipped problem and return (certificate, intermediates)."""
    pf = load_problem("nishizawa")
    cert = prove(pf.problem, pf.strategy, cfg)
    c = _split_point(cert)
    c1 = HALF_PI - c
    first, second = _walk_kind(cert.root, "TheoremTH")
    A, B, C, P14, a_cert, witness, pairs = _case_one(first, c)
    P, Q, T10, phi1, phi2, psi = _case_two(second, c1)
    inter = Intermediates(
        c=c, c1=c1, A=A, B=B, C=C, P14=P14, P=P, Q=Q, T10=T10, phi1=phi1, phi2=phi2, psi=psi,
        f1_limits=tuple(const_from_json(v["value"]) for v in first.data["limits"]),
        g1_limits=tuple(const_from_json(v["value"]) for v in second.data["limits"]),
        a_certificate=a_cert, grouping=witness, pair_checks=pairs,
        bounds=_case_two_bounds(P, T10, phi1, phi2, psi, c1),
    )
    return cert, inter


def _split_point(cert: Certificate) -> PiRat:
    (split,) = _walk_kind(cert.root, "IntervalSplit")
    return pirat_from_json(split.data["point"])
