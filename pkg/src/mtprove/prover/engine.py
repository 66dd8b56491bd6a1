"""Proof search: reductions, interval restructuring and the limit/derivative schema."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from fractions import Fraction

from ..bounds import DEFAULT_DEGREE_BUDGET, polynomial_minorant
from ..errors import (
    BasePositivityFailed, CannotCertify, LimitSignFailed, MtpError, NotMLTP, NumeratorFailed,
    PointOutsideInterval, ProofNotFound, RadiusExceeded, SideConditionFailed, SignUndecided,
    UndecidableAtBudget,
)
from ..exact.constexpr import (
    DEFAULT_LN_TERMS, DEFAULT_PI_DEPTH, certified_enclosure, const, const_to_json, enclose_const, enclosure_budget,
    pirat_to_json, sign_const,
)
from ..exact.domain import HALF_PI, Interval
from ..exact.pipoly import ONE, PiRat
from ..exact.sign import Sign
from ..polycert import certify_sign
from ..polycert.certificate import sign_name
from ..polycert.tactics import qtext
from ..symbolic import expr as E
from ..symbolic.mltp import MLTP, to_mltp, to_mtp
from ..symbolic.mtp import COS, MTP, SIN, X as MX
from ..symbolic.polyx import PolyX
from ..symbolic.quotient import Quotient, derivative_quotient
from ..symbolic.series import series_at_zero
from .certificate import Certificate, Node
from .problem import AUTO, Problem, Step

log = logging.getLogger("mtprove.prover")

ATOMS = {MX: "x", SIN: "sin", COS: "cos"}
MAX_LEVEL = 3


@dataclass(frozen=True)
class Config:
    pi_depth: int = DEFAULT_PI_DEPTH
    ln_terms: int = DEFAULT_LN_TERMS
    series_order: int = None
    degree_budget: int = DEFAULT_DEGREE_BUDGET
    split_depth: int = 4
    timeout_seconds: float = 120

    def __post_init__(self):
        for name in ("pi_depth", "ln_terms", "degree_budget", "split_depth", "timeout_seconds"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be at least 1")


class _Clock:
    def __init__(self, seconds):
        self.deadline = time.monotonic() + seconds

    def check(self):
        if time.monotonic() > self.deadline:
            raise ProofNotFound("time budget exhausted")


# -- leaves -------------------------------------------------------------------------

def const_sign_node(e, allow_zero: bool = False, cfg: Config = Config()) -> Node:
    """ConstSign leaf certifying e > 0 (or e = 0 when allowed)."""
    try:
        s = sign_const(e)
    except UndecidableAtBudget as exc:
        raise SignUndecided(f"sign of {e} undecided") from exc
    if s == Sign.NEGATIVE or (s == Sign.ZERO and not allow_zero):
        raise SignUndecided(f"constant is {sign_name(s)}")
    if s == Sign.ZERO:
        depth, terms = enclosure_budget(e, cfg.pi_depth, cfg.ln_terms)
        enc = enclose_const(e, depth, terms)
    else:
        _, enc, depth, terms = certified_enclosure(e, pi_depth=cfg.pi_depth, ln_terms=cfg.ln_terms)
    return Node("ConstSign", {"expr": const_to_json(e), "sign": sign_name(s), "pi_depth": depth,
                              "ln_terms": terms, "enclosure": [qtext(enc.lo), qtext(enc.hi)]})


def domain_sign_node(atom: str, interval: Interval, cfg: Config = Config()) -> Node:
    """x, sin x or cos x is positive on a subinterval of [0, pi/2] by domain facts."""
    lo_fact = const_sign_node(const(interval.lo), atom == "cos" or not interval.lo_closed, cfg)
    hi_fact = const_sign_node(const(HALF_PI - interval.hi), atom != "cos" or not interval.hi_closed, cfg)
    return Node("DomainSign", {"atom": atom, "interval": interval.to_json()}, (lo_fact, hi_fact))


def poly_sign_node(cert) -> Node:
    return Node("PolySign", {"certificate": cert.to_json()})


def _presentations(g: MTP):
    return Quotient(g, ONE, ()).presentations()


def _piece_json(piece):
    return {"q": piece.q, "r": piece.r, "coefficient": piece.coefficient.to_json(),
            "certificate": piece.sign_certificate.to_json(),
            "cos_bound": piece.cos_bound.to_json() if piece.cos_bound else None,
            "sin_bound": piece.sin_bound.to_json() if piece.sin_bound else None,
            "nonneg": [c.to_json() for c in piece.nonneg], "zero": piece.zero}


def minorant_node(g: MTP, interval: Interval, cfg: Config, start_level: int = 1) -> Node:
    """Strict positivity of an MTP through a truncation minorant and a sign certificate."""
    reasons = []
    for level in range(start_level, MAX_LEVEL + 1):
        for pres in _presentations(g):
            try:
                m = polynomial_minorant(pres, interval, cfg.degree_budget, level)
                cert = certify_sign(m.poly, interval, Sign.POSITIVE)
            except (CannotCertify, RadiusExceeded, SignUndecided) as exc:
                reasons.append(str(exc))
                continue
            return Node("TrigMinorant", {
                "target": pres.to_json(), "interval": interval.to_json(), "level": level,
                "pieces": [_piece_json(p) for p in m.pieces], "minorant": m.poly.to_json(),
                "bounds": [b.to_json() for b in m.bounds_used()],
            }, (poly_sign_node(cert),))
    raise NumeratorFailed("no minorant certifies positivity: " + (reasons[-1] if reasons else "no forms"))


def mtp_positive(g: MTP, interval: Interval, cfg: Config, start_level: int = 1) -> Node:
    """Proof that g > 0 on the interval."""
    if g.is_constant():
        return const_sign_node(const(g.constant_value()), cfg=cfg)
    if g in ATOMS:
        return domain_sign_node(ATOMS[g], interval, cfg)
    if g.max_trig_degree() == 0:
        try:
            return poly_sign_node(certify_sign(g.as_polyx(), interval, Sign.POSITIVE))
        except CannotCertify as exc:
            raise NumeratorFailed(str(exc)) from exc
    return minorant_node(g, interval, cfg, start_level)


# -- reductions ---------------------------------------------------------------------

def _sides(p: Problem):
    return (p.lhs, p.rhs) if p.relation == ">" else (p.rhs, p.lhs)


def direct_reduce(p: Problem):
    big, small = _sides(p)
    F = MLTP(to_mtp(E.Sub(big, small)))
    return F, {"target": F.to_json(), "interval": p.interval.to_json(), "relation": p.relation}


def log_reduce(p: Problem, cfg: Config = Config()):
    """F = ln(big) - ln(small), with every log argument certified positive."""
    big, small = _sides(p)
    try:
        F = to_mltp(E.Ln(big)) - to_mltp(E.Ln(small))
    except NotMLTP as exc:
        raise BasePositivityFailed(f"sides do not split into logarithms of MTPs: {exc}") from exc
    proofs = []
    for _, arg in F.logs:
        try:
            proofs.append(mtp_positive(arg, p.interval, cfg))
        except MtpError as exc:
            raise BasePositivityFailed(f"cannot certify {arg} > 0: {exc}") from exc
    data = {"target": F.to_json(), "interval": p.interval.to_json(), "relation": p.relation}
    return F, data, proofs


def _main_log(F: MLTP) -> int:
    if not F.logs:
        raise SideConditionFailed("no log term to modify")
    best = 0
    for i, (m, _) in enumerate(F.logs):
        if m.degree > F.logs[best][0].degree:
            best = i
    return best


def replace_multiplier(F: MLTP, index: int, new: PolyX) -> MLTP:
    logs = [(new if i == index else m, a) for i, (m, a) in enumerate(F.logs)]
    return MLTP(F.base, logs)


def exponent_reduce(F: MLTP, multiplier: PolyX, interval: Interval, cfg: Config = Config()):
    """F1 with the main log multiplier M replaced; F >= F1 on the interval.

    With 0 < b < 1 the side condition is multiplier - M >= 0; with b > 1 it is
    M - multiplier >= 0.
    """
    j = _main_log(F)
    M, b = F.logs[j]
    reasons = []
    for side_name, side, margin in (("below_one", multiplier - M, MTP.constant(ONE) - b),
                                    ("above_one", M - multiplier, b - MTP.constant(ONE))):
        try:
            side_cert = certify_sign(side, interval, Sign.POSITIVE, strict=False)
            base_proof = mtp_positive(margin, interval, cfg)
        except MtpError as exc:
            reasons.append(f"{side_name}: {exc}")
            continue
        F1 = replace_multiplier(F, j, multiplier)
        data = {"target": F.to_json(), "interval": interval.to_json(), "index": j,
                "replacement": multiplier.to_json(), "base_side": side_name}
        return F1, data, (poly_sign_node(side_cert), base_proof)
    raise SideConditionFailed("; ".join(reasons))


def split_nodes(interval: Interval, point: PiRat, cfg: Config = Config()):
    try:
        facts = (const_sign_node(const(point - interval.lo), cfg=cfg),
                 const_sign_node(const(interval.hi - point), cfg=cfg))
    except SignUndecided as exc:
        raise PointOutsideInterval(f"{point} is not strictly inside {interval}") from exc
    return interval.split(point), facts


# -- the limit/derivative schema ----------------------------------------------------

def _quotient_json(q: Quotient):
    return {"numerator": q.numerator.to_json(), "constant": pirat_to_json(q.constant),
            "factors": [{"kind": f.kind, "base": f.base.to_json(), "exponent": f.exponent} for f in q.factors]}


def theorem_quotient(F: MLTP) -> Quotient:
    if F.K < 0:
        return Quotient(F.base, ONE, ())
    return derivative_quotient(F, F.K + 1).normalized()


def prove_theorem_th(F: MLTP, interval: Interval, cfg: Config = Config(), level: int = 1) -> Node:
    K = F.K
    limits, limit_nodes = [], []
    if K >= 0:
        if not interval.starts_at_zero():
            raise LimitSignFailed("the schema needs an interval (0, b]")
        order = max(K, K + 4 if cfg.series_order is None else cfg.series_order)
        series = series_at_zero(F, order)
        for j in range(K + 1):
            value = series.limit(j)
            try:
                limit_nodes.append(const_sign_node(value, True, cfg))
            except SignUndecided as exc:
                raise LimitSignFailed(f"limit of derivative {j} at 0+: {exc}") from exc
            limits.append({"order": j, "value": const_to_json(value)})
    q = theorem_quotient(F)
    factor_nodes = [const_sign_node(const(q.constant), cfg=cfg)]
    for f in q.factors:
        if f.kind == "poly":
            try:
                factor_nodes.append(poly_sign_node(certify_sign(f.base.as_polyx(), interval, Sign.POSITIVE)))
            except CannotCertify as exc:
                raise NumeratorFailed(f"denominator factor {f.base}: {exc}") from exc
        else:
            factor_nodes.append(domain_sign_node(f.kind, interval, cfg))
    numerator = mtp_positive(q.numerator, interval, cfg, level)
    data = {"target": F.to_json(), "interval": interval.to_json(), "K": K, "derivative_order": K + 1,
            "limits": limits, "quotient": _quotient_json(q)}
    return Node("TheoremTH", data, tuple(limit_nodes) + tuple(factor_nodes) + (numerator,))


# -- search -------------------------------------------------------------------------

class _Search:
    def __init__(self, cfg: Config):
        self.cfg = cfg
        self.clock = _Clock(cfg.timeout_seconds)
        self.frontier = []

    def fail(self, interval, message):
        self.frontier.append(f"{interval}: {message}")
        raise ProofNotFound(message, self.frontier)

    def scripted(self, F: MLTP, interval: Interval, step: Step, depth: int = 0) -> Node:
        self.clock.check()
        k = step.kind
        if k == "auto":
            return self.auto(F, interval, depth)
        if k == "theorem":
            return prove_theorem_th(F, interval, self.cfg, step.level)
        if k == "multiplier":
            new = to_mtp(step.expr)
            if new.max_trig_degree() > 0:
                raise SideConditionFailed("a multiplier must be a polynomial in x")
            F1, data, side = exponent_reduce(F, new.as_polyx(), interval, self.cfg)
            return Node("ExponentReduce", data, side + (self.scripted(F1, interval, step.children[0], depth),))
        if k == "reflect":
            return self.reflect(F, interval, lambda G, J: self.scripted(G, J, step.children[0], depth))
        (left, right), facts = split_nodes(interval, step.point, self.cfg)
        return Node("IntervalSplit", _split_data(F, interval, step.point), facts + (
            self.scripted(F, left, step.children[0], depth + 1),
            self.scripted(F, right, step.children[1], depth + 1)))

    def reflect(self, F, interval, prove_child) -> Node:
        G, J = F.reflect(), interval.reflect()
        return Node("Reflect", {"target": F.to_json(), "interval": interval.to_json()}, (prove_child(G, J),))

    def auto(self, F: MLTP, interval: Interval, depth: int = 0, reflected: bool = False) -> Node:
        self.clock.check()
        reasons = []
        if F.K < 0 or interval.starts_at_zero():
            try:
                return prove_theorem_th(F, interval, self.cfg)
            except (LimitSignFailed, NumeratorFailed, SignUndecided, CannotCertify, RadiusExceeded) as exc:
                reasons.append(f"theorem: {exc}")
        roots = []
        if F.K >= 1 and interval.starts_at_zero():
            for cand in _multiplier_candidates(F, interval):
                try:
                    F1, data, side = exponent_reduce(F, cand, interval, self.cfg)
                    child = prove_theorem_th(F1, interval, self.cfg)
                    return Node("ExponentReduce", data, side + (child,))
                except SideConditionFailed as exc:
                    reasons.append(f"multiplier {cand}: {exc}")
                    roots += _side_roots(F, cand, interval)
                except (LimitSignFailed, NumeratorFailed, SignUndecided, CannotCertify, RadiusExceeded) as exc:
                    reasons.append(f"multiplier {cand}: {exc}")
        if not reflected and interval.hi == HALF_PI and not interval.hi_closed:
            try:
                return self.reflect(F, interval, lambda G, J: self.auto(G, J, depth, True))
            except ProofNotFound as exc:
                reasons.append(f"reflect: {exc}")
        if depth < self.cfg.split_depth:
            for point in roots + [_bisector(interval)]:
                try:
                    (left, right), facts = split_nodes(interval, point, self.cfg)
                    a = self.auto(F, left, depth + 1, reflected)
                    b = self.auto(F, right, depth + 1, reflected)
                    return Node("IntervalSplit", _split_data(F, interval, point), facts + (a, b))
                except (PointOutsideInterval, ProofNotFound) as exc:
                    reasons.append(f"split at {point}: {exc}")
        self.fail(interval, reasons[0] if reasons else "no applicable step")


def _split_data(F, interval, point):
    return {"target": F.to_json(), "interval": interval.to_json(), "point": pirat_to_json(point)}


def _bisector(interval: Interval) -> PiRat:
    """A short rational strictly between the endpoints."""
    hull = interval.rational_hull()
    mid = (hull.lo + hull.hi) / 2
    for den in (2, 4, 8, 10, 100, 1000, 10 ** 6):
        q = PiRat.of(Fraction(round(mid * den), den))
        if interval.contains_strictly(q):
            return q
    return PiRat.of(mid)


def _multiplier_candidates(F: MLTP, interval: Interval):
    """Polynomials of degree < deg M through M at the endpoints (and midpoint)."""
    M = F.logs[_main_log(F)][0]
    lo, hi = interval.lo, interval.hi
    mid = (lo + hi) / 2
    a, b, c = M.evaluate(lo), M.evaluate(hi), M.evaluate(mid)
    x = PolyX.x()
    out = [PolyX.constant(a), PolyX.constant(b)]
    slope = (b - a) / (hi - lo)
    out.append(PolyX.constant(a) + (x - PolyX.constant(lo)) * slope)
    if M.degree >= 3:
        # Newton form through lo, mid, hi
        d1 = (c - a) / (mid - lo)
        d2 = ((b - c) / (hi - mid) - d1) / (hi - lo)
        out.append(PolyX.constant(a) + (x - PolyX.constant(lo)) * d1
                   + (x - PolyX.constant(lo)) * (x - PolyX.constant(mid)) * d2)
    seen, uniq = set(), []
    for p in out:
        if p.degree < M.degree and p not in seen:
            seen.add(p)
            uniq.append(p)
    return uniq


def _side_roots(F: MLTP, cand: PolyX, interval: Interval):
    M = F.logs[_main_log(F)][0]
    side = cand - M
    side = side.shift_down(side.valuation()) if not side.is_zero() else side
    if side.degree != 1:
        return []
    root = -side.coefficient(0) / side.coefficient(1)
    try:
        return [root] if interval.contains_strictly(root) else []
    except UndecidableAtBudget:
        return []


def reduce_problem(p: Problem, cfg: Config = Config()):
    """(F, kind, data, positivity proofs) for the root reduction."""
    try:
        F, data = direct_reduce(p)
        return F, "DirectReduce", data, ()
    except NotMLTP:
        pass
    F, data, proofs = log_reduce(p, cfg)
    return F, "LogReduce", data, tuple(proofs)


def prove(p: Problem, strategy: Step = AUTO, cfg: Config = Config()) -> Certificate:
    """Search for a certificate of p; ProofNotFound carries the failing frontier."""
    search = _Search(cfg)
    try:
        F, kind, data, proofs = reduce_problem(p, cfg)
        log.info("reduced to %s with K = %d", kind, F.K)
        body = search.scripted(F, p.interval, strategy)
    except ProofNotFound:
        raise
    except MtpError as exc:
        frontier = search.frontier + [f"{p.interval}: {exc}"]
        raise ProofNotFound(f"{type(exc).__name__}: {exc}", frontier) from exc
    return Certificate(p, Node(kind, data, proofs + (body,)))
