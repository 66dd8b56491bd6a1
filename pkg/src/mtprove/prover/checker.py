"""Independent certificate checker.

Only exact arithmetic and the algebra layer are trusted. Sign certificates
are replayed here with separate code, the derivative quotient is checked
against a direct Leibniz expansion, and truncation bounds are rebuilt from
the Maclaurin coefficients. Every recorded field must match its replay, so
a certificate is accepted only in the exact form a sound derivation gives.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, floor, gcd, lcm

from ..errors import MtpError, UndecidableAtBudget
from ..exact.constexpr import (
    const, const_to_json, enclose_const, enclosure_budget, pirat_from_json, pirat_to_json, sign_const,
)
from ..exact.domain import HALF_PI, Interval
from ..exact.pipoly import ONE, ZERO, PiRat
from ..exact.sign import Sign
from ..symbolic import expr as E
from ..symbolic.mltp import MLTP, to_mltp, to_mtp
from ..symbolic.mtp import COS, MTP, SIN, X as MX
from ..symbolic.polyx import PolyX
from ..symbolic.series import series_at_zero
from .certificate import SCHEMA, Certificate
from .problem import Problem

_ATOMS = {"x": MX, "sin": SIN, "cos": COS}
_SIGNS = {"positive": Sign.POSITIVE, "negative": Sign.NEGATIVE, "zero": Sign.ZERO}
_MAX_STURM_DOUBLINGS = 4
_MAX_BUDGET = 1 << 16


@dataclass(frozen=True)
class Verdict:
    accepted: bool
    path: tuple = ()
    reason: str = ""

    def __bool__(self):
        return self.accepted

    def __str__(self):
        if self.accepted:
            return "Accept"
        where = "/".join(str(i) for i in self.path) or "root"
        return f"Reject at {where}: {self.reason}"


class _Reject(Exception):
    def __init__(self, path, reason):
        self.path = tuple(path)
        self.reason = reason
        super().__init__(reason)


def _need(cond, path, reason):
    if not cond:
        raise _Reject(path, reason)


def _q(text) -> Fraction:
    if not isinstance(text, str):
        raise ValueError("rational must be a string")
    return Fraction(text)


def _qt(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _canonical(cls, data):
    obj = cls.from_json(data)
    if obj.to_json() != data:
        raise ValueError(f"non-canonical {cls.__name__} encoding")
    return obj


def _pirat(data) -> PiRat:
    value = pirat_from_json(data)
    if pirat_to_json(value) != data:
        raise ValueError("non-canonical constant encoding")
    return value


def _sgn(value: PiRat) -> Sign:
    return value.sign()


# -- entry --------------------------------------------------------------------------

def check(cert, problem: Problem = None) -> Verdict:
    """Accept iff cert (Certificate, JSON dict or text) proves problem."""
    try:
        if isinstance(cert, Certificate):
            data = cert.to_json()
        elif isinstance(cert, str):
            import json
            data = json.loads(cert)
        else:
            data = cert
        _need(isinstance(data, dict) and data.get("schema") == SCHEMA, (), "unknown schema")
        stated = Problem.from_json(data["problem"])
        if problem is not None:
            _need(stated == problem, (), "certificate is for a different problem")
        _Checker().root(data["root"], stated)
    except _Reject as r:
        return Verdict(False, r.path, r.reason)
    except (KeyError, IndexError, TypeError, ValueError, ZeroDivisionError, AttributeError,
            MtpError, RecursionError) as exc:
        return Verdict(False, getattr(exc, "path", ()), f"malformed certificate: {type(exc).__name__}: {exc}")
    return Verdict(True)


class _Checker:
    def __init__(self):
        self.path = []

    # -- tree ---------------------------------------------------------------------

    def _children(self, node, count, path):
        kids = node["children"]
        _need(isinstance(kids, list) and len(kids) == count, path, f"expected {count} children")
        return kids

    def _header(self, node, kind, F, interval, path):
        _need(node["kind"] == kind, path, f"expected {kind}, found {node['kind']}")
        if F is not None:
            _need(node["target"] == F.to_json(), path, "target function does not match")
        _need(node["interval"] == interval.to_json(), path, "interval does not match")

    def root(self, node, p: Problem):
        path = ()
        big, small = (p.lhs, p.rhs) if p.relation == ">" else (p.rhs, p.lhs)
        kind = node["kind"]
        if kind == "DirectReduce":
            F = MLTP(to_mtp(E.Sub(big, small)))
            self._header(node, kind, F, p.interval, path)
            _need(node["relation"] == p.relation, path, "relation does not match")
            (child,) = self._children(node, 1, path)
            self.claim(child, F, p.interval, path + (0,))
            return
        _need(kind == "LogReduce", path, f"unexpected root kind {kind}")
        F = to_mltp(E.Ln(big)) - to_mltp(E.Ln(small))
        self._header(node, kind, F, p.interval, path)
        _need(node["relation"] == p.relation, path, "relation does not match")
        kids = self._children(node, len(F.logs) + 1, path)
        for i, (_, arg) in enumerate(F.logs):
            self.positive(kids[i], arg, p.interval, path + (i,))
        self.claim(kids[-1], F, p.interval, path + (len(F.logs),))

    def claim(self, node, F: MLTP, interval: Interval, path):
        """node proves F > 0 on interval."""
        kind = node["kind"]
        if kind == "TheoremTH":
            return self.theorem(node, F, interval, path)
        if kind == "ExponentReduce":
            self._header(node, kind, F, interval, path)
            j = node["index"]
            _need(isinstance(j, int) and 0 <= j < len(F.logs), path, "log index out of range")
            M, b = F.logs[j]
            new = _canonical(PolyX, node["replacement"])
            if node["base_side"] == "below_one":
                side, margin = new - M, MTP.constant(ONE) - b
            else:
                _need(node["base_side"] == "above_one", path, "unknown base side")
                side, margin = M - new, b - MTP.constant(ONE)
            side_node, base_node, child = self._children(node, 3, path)
            self.poly_sign(side_node, side, interval, Sign.POSITIVE, False, path + (0,))
            self.positive(base_node, margin, interval, path + (1,))
            logs = [(new if i == j else m, a) for i, (m, a) in enumerate(F.logs)]
            return self.claim(child, MLTP(F.base, logs), interval, path + (2,))
        if kind == "IntervalSplit":
            self._header(node, kind, F, interval, path)
            point = _pirat(node["point"])
            lo_fact, hi_fact, left, right = self._children(node, 4, path)
            self.const_sign(lo_fact, const(point - interval.lo), False, path + (0,))
            self.const_sign(hi_fact, const(interval.hi - point), False, path + (1,))
            self.claim(left, F, Interval(interval.lo, point, interval.lo_closed, True), path + (2,))
            self.claim(right, F, Interval(point, interval.hi, False, interval.hi_closed), path + (3,))
            return
        if kind == "Reflect":
            self._header(node, kind, F, interval, path)
            (child,) = self._children(node, 1, path)
            J = Interval(HALF_PI - interval.hi, HALF_PI - interval.lo, interval.hi_closed, interval.lo_closed)
            return self.claim(child, F.reflect(), J, path + (0,))
        raise _Reject(path, f"{kind} does not prove a function positive")

    # -- the limit/derivative schema ----------------------------------------------

    def theorem(self, node, F: MLTP, interval: Interval, path):
        self._header(node, "TheoremTH", F, interval, path)
        K = F.K
        _need(node["K"] == K and node["derivative_order"] == K + 1, path, "wrong order")
        limits = node["limits"]
        _need(isinstance(limits, list) and len(limits) == K + 1, path, "wrong number of limits")
        values = []
        if K >= 0:
            _need(interval.lo.is_zero() and not interval.lo_closed, path, "schema needs (0, b]")
            s = series_at_zero(F, K)
            values = [s.limit(j) for j in range(K + 1)]
            for j, v in enumerate(values):
                _need(limits[j] == {"order": j, "value": const_to_json(v)}, path, f"limit {j} does not match")
        qd = node["quotient"]
        N = _canonical(MTP, qd["numerator"])
        c = _pirat(qd["constant"])
        factors = []
        for f in qd["factors"]:
            kind, base, e = f["kind"], _canonical(MTP, f["base"]), f["exponent"]
            _need(isinstance(e, int) and e >= 1, path, "factor exponent must be positive")
            if kind in _ATOMS:
                _need(base == _ATOMS[kind], path, "atomic factor base mismatch")
            else:
                _need(kind == "poly" and base.max_trig_degree() == 0 and not base.is_constant(),
                      path, "bad polynomial factor")
            factors.append((kind, base, e))
        D = MTP.constant(c)
        for _, base, e in factors:
            D = D * base ** e
        if K < 0:
            _need(not factors and (N - F.base.scale(c)).is_zero_function(), path, "quotient is not F")
        else:
            R, L = _leibniz(F, K + 1)
            _need((N * L - D * R).is_zero_function(), path, "derivative identity fails")
        kids = self._children(node, K + 1 + 1 + len(factors) + 1, path)
        for j, v in enumerate(values):
            self.const_sign(kids[j], v, True, path + (j,))
        base_i = K + 1
        self.const_sign(kids[base_i], const(c), False, path + (base_i,))
        for i, (kind, base, _) in enumerate(factors):
            i_path = path + (base_i + 1 + i,)
            if kind == "poly":
                self.poly_sign(kids[base_i + 1 + i], base.as_polyx(), interval, Sign.POSITIVE, True, i_path)
            else:
                self.domain(kids[base_i + 1 + i], kind, interval, i_path)
        self.positive(kids[-1], N, interval, path + (len(kids) - 1,))

    # -- positivity of an MTP -------------------------------------------------------

    def positive(self, node, G: MTP, interval: Interval, path):
        kind = node["kind"]
        if kind == "ConstSign":
            _need(G.is_constant(), path, "ConstSign for a nonconstant function")
            return self.const_sign(node, const(G.constant_value()), False, path)
        if kind == "DomainSign":
            atom = node["atom"]
            _need(atom in _ATOMS and G == _ATOMS[atom], path, "DomainSign atom does not match")
            return self.domain(node, atom, interval, path)
        if kind == "PolySign":
            _need(G.max_trig_degree() == 0, path, "PolySign for a trigonometric function")
            return self.poly_sign(node, G.as_polyx(), interval, Sign.POSITIVE, True, path)
        if kind == "TrigMinorant":
            return self.minorant(node, G, interval, path)
        raise _Reject(path, f"{kind} does not prove an MTP positive")

    def domain(self, node, atom, interval: Interval, path):
        _need(node["kind"] == "DomainSign" and node["atom"] == atom, path, "expected DomainSign")
        _need(node["interval"] == interval.to_json(), path, "interval does not match")
        lo_fact, hi_fact = self._children(node, 2, path)
        zero_lo = atom == "cos" or not interval.lo_closed
        zero_hi = atom != "cos" or not interval.hi_closed
        self.const_sign(lo_fact, const(interval.lo), zero_lo, path + (0,))
        self.const_sign(hi_fact, const(HALF_PI - interval.hi), zero_hi, path + (1,))

    def const_sign(self, node, e, allow_zero: bool, path):
        _need(node["kind"] == "ConstSign", path, "expected ConstSign")
        _need(node["expr"] == const_to_json(e), path, "constant does not match")
        _need(node["children"] == [], path, "ConstSign has no children")
        depth, terms = node["pi_depth"], node["ln_terms"]
        _need(enclosure_budget(e, depth, terms) == (depth, terms), path, "budget fields do not match the constant")
        for b in (depth, terms):
            _need(b is None or (isinstance(b, int) and not isinstance(b, bool) and 1 <= b <= _MAX_BUDGET),
                  path, "budget out of range")
        enc = enclose_const(e, depth, terms)
        _need(node["enclosure"] == [_qt(enc.lo), _qt(enc.hi)], path, "enclosure mismatch")
        recorded = _SIGNS.get(node["sign"])
        if recorded == Sign.POSITIVE:
            _need(enc.lo > 0, path, "enclosure does not show a positive constant")
        else:
            _need(recorded == Sign.ZERO and allow_zero, path, "constant has the wrong sign")
            try:
                _need(sign_const(e) == Sign.ZERO, path, "constant is not identically zero")
            except UndecidableAtBudget:
                raise _Reject(path, "constant is not identically zero") from None

    # -- minorants -------------------------------------------------------------------

    def minorant(self, node, G: MTP, interval: Interval, path):
        _need(node["kind"] == "TrigMinorant", path, "expected TrigMinorant")
        target = _canonical(MTP, node["target"])
        _need((target - G).is_zero_function(), path, "minorant target differs from the function")
        _need(node["interval"] == interval.to_json(), path, "interval does not match")
        level = node["level"]
        _need(isinstance(level, int) and 1 <= level <= 3, path, "bad level")
        hull_hi = interval.rational_hull().hi
        sums, total, used = {}, PolyX(), []
        for k, piece in enumerate(node["pieces"]):
            p_path = path + ("pieces", k)
            q, r = piece["q"], piece["r"]
            _need(isinstance(q, int) and isinstance(r, int) and q >= 0 and r >= 0, p_path, "bad exponents")
            coeff = _canonical(PolyX, piece["coefficient"])
            cert = piece["certificate"]
            claimed = _SIGNS.get(cert.get("claimed"))
            _need(claimed in (Sign.POSITIVE, Sign.NEGATIVE), p_path, "coefficient sign must be strict")
            self.sign_certificate(cert, coeff, interval, claimed, False, p_path)
            sums[(q, r)] = sums.get((q, r), PolyX()) + coeff
            bounds = (piece["cos_bound"], piece["sin_bound"])
            if (q, r) == (0, 0):
                _need(bounds == (None, None) and piece["nonneg"] == [] and piece["zero"] is False,
                      p_path, "plain polynomial piece carries bounds")
                total = total + coeff
                continue
            if piece["zero"] is True:
                _need(claimed == Sign.POSITIVE and bounds == (None, None) and piece["nonneg"] == [],
                      p_path, "only nonnegative pieces may be bounded by zero")
                continue
            _need(piece["zero"] is False, p_path, "bad zero flag")
            direction = "lower" if claimed == Sign.POSITIVE else "upper"
            contribution = coeff
            polys = []
            for func, power, b in (("cos", q, bounds[0]), ("sin", r, bounds[1])):
                if not power:
                    _need(b is None, p_path, f"unused {func} bound")
                    continue
                tpoly, expected = _truncation(func, b["degree"])
                _need(b == expected, p_path, f"{func} truncation data is wrong")
                _need(expected["direction"] == direction, p_path, f"{func} truncation has the wrong direction")
                _need(hull_hi * hull_hi < expected["radius_sq"], p_path,
                      f"{func} truncation used outside its validity radius")
                contribution = contribution * tpoly ** power
                polys.append(tpoly)
                if expected not in used:
                    used.append(expected)
            nonneg = piece["nonneg"]
            if direction == "lower" and q + r >= 2:
                _need(isinstance(nonneg, list) and len(nonneg) == len(polys), p_path, "missing nonnegativity")
                for i, (c, tpoly) in enumerate(zip(nonneg, polys)):
                    self.sign_certificate(c, tpoly, interval, Sign.POSITIVE, False, p_path + ("nonneg", i))
            else:
                _need(nonneg == [], p_path, "unexpected nonnegativity certificates")
            total = total + contribution
        # sin, cos >= 0 is what makes powers of bounds and zero bounds valid
        _need(_sgn(interval.lo) != Sign.NEGATIVE and _sgn(HALF_PI - interval.hi) != Sign.NEGATIVE,
              path, "minorants need an interval inside [0, pi/2]")
        groups = target.trig_groups()
        _need(set(sums) == set(groups) and all(sums[k] == groups[k] for k in groups), path,
              "pieces do not add up to the target")
        _need(node["minorant"] == total.to_json(), path, "minorant polynomial does not match")
        _need(node["bounds"] == used, path, "bounds list does not match")
        (child,) = self._children(node, 1, path)
        self.poly_sign(child, total, interval, Sign.POSITIVE, True, path + (0,))

    # -- polynomial signs -------------------------------------------------------------

    def poly_sign(self, node, p: PolyX, interval, want, strict, path):
        _need(node["kind"] == "PolySign" and node["children"] == [], path, "expected PolySign")
        self.sign_certificate(node["certificate"], p, interval, want, strict, path)

    def sign_certificate(self, c, p: PolyX, interval: Interval, want: Sign, strict: bool, path):
        _need(c["polynomial"] == p.to_json(), path, "certified polynomial does not match")
        _need(c["interval"] == interval.to_json(), path, "certified interval does not match")
        _need(_SIGNS.get(c["claimed"]) == want, path, "claimed sign does not match")
        _need(c["strict"] is strict, path, "strictness does not match")
        replay_sign_certificate(c, path)


def replay_sign_certificate(c, path=()):
    """Verify a serialized sign certificate by itself."""
    p = _canonical(PolyX, c["polynomial"])
    interval = _canonical(Interval, c["interval"])
    want = _SIGNS[c["claimed"]]
    strict = c["strict"]
    tactic = c["tactic"]
    witness = c["witness"]
    j = c["x_power"]
    _need(isinstance(strict, bool) and isinstance(j, int) and isinstance(witness, dict), path, "malformed")
    margin = _q(c["margin"])
    if tactic == "Zero":
        _need(p.is_zero() and j == 0 and witness == {} and margin == 0, path, "bad Zero certificate")
        _need(want == Sign.ZERO or not strict, path, "zero polynomial has no strict sign")
        return
    _need(want != Sign.ZERO and not p.is_zero(), path, "nonzero claim on the zero polynomial")
    q = p if want == Sign.POSITIVE else -p
    if _sgn(interval.lo) == Sign.NEGATIVE:
        _need(j == 0, path, "x-power stripped on an interval reaching below 0")
    else:
        _need(j == _valuation(q), path, "x-power does not match")
        _need(not (j and interval.lo.is_zero() and interval.lo_closed and strict), path,
              "vanishes at the closed endpoint 0")
    q = PolyX(q.coeffs[j:])
    hull = interval.rational_hull()
    lo, hi = hull.lo, hull.hi
    ok = _accept_zero if not strict else (lambda s: s == Sign.POSITIVE)
    if tactic == "MonomialEndpoint":
        _need(lo >= 0, path, "endpoint bound needs x >= 0")
        bound = ZERO
        for k, a in enumerate(q.coeffs):
            s = _sgn(a)
            if s != Sign.ZERO:
                bound = bound + a * ((lo if s == Sign.POSITIVE else hi) ** k)
        _need(witness == {"hull": [_qt(lo), _qt(hi)], "bound": pirat_to_json(bound)}, path, "witness mismatch")
        _need(ok(_sgn(bound)), path, "endpoint bound is not positive")
        _need(margin == _margin(bound), path, "margin mismatch")
    elif tactic == "PairGrouping":
        _need(lo >= 0, path, "grouping needs x >= 0")
        _need(witness.get("hull_hi") == _qt(hi) and set(witness) == {"hull_hi", "groups"}, path, "witness mismatch")
        groups = witness["groups"]
        flat = [e for g in groups for e in g]
        support = [k for k in range(len(q.coeffs) - 1, -1, -1) if not q.coeffs[k].is_zero()]
        _need(flat == support and all(1 <= len(g) <= 2 for g in groups), path, "groups do not partition the terms")
        for g in groups:
            low = q.coeffs[g[-1]]
            _need(_sgn(low) == Sign.POSITIVE, path, "group with a nonpositive low coefficient")
            if len(g) == 2:
                a = q.coeffs[g[0]]
                if _sgn(a) == Sign.NEGATIVE:
                    _need(ok(_sgn(a * PiRat.of(hi) ** (g[0] - g[1]) + low)), path, "group check fails")
        _need(margin == 0, path, "margin mismatch")
    elif tactic == "QuadraticVertex":
        _need(len(q.coeffs) <= 3, path, "degree exceeds 2")
        case, value = _quadratic_min(q, interval.lo, interval.hi)
        _need(witness == {"case": case, "minimum": pirat_to_json(value)}, path, "witness mismatch")
        _need(ok(_sgn(value)), path, "minimum is not positive")
        _need(margin == _margin(value), path, "margin mismatch")
    elif tactic == "Sturm":
        _need(lo >= 0, path, "proxy needs x >= 0")
        depth = witness["pi_depth"]
        _need(depth in [8 * 2 ** k for k in range(_MAX_STURM_DOUBLINGS + 1)], path, "bad pi depth")
        proxy = [a.rational_value() if a.is_rational() else
                 Fraction(floor(a.enclose(depth).lo * (1 << (4 * depth + 32))), 1 << (4 * depth + 32))
                 for a in q.coeffs]
        for a, b in zip(q.coeffs, proxy):
            _need(_sgn(a - b) != Sign.NEGATIVE, path, "proxy exceeds the polynomial")
        chain = _sturm_chain(proxy)
        va, vb = _variations(chain, lo), _variations(chain, hi)
        ends = [not interval.lo_closed and interval.lo.is_rational() and interval.lo.rational_value() == lo,
                not interval.hi_closed and interval.hi.is_rational() and interval.hi.rational_value() == hi]
        sample = (lo + hi) / 2
        expected = {"hull": [_qt(lo), _qt(hi)], "open": ends, "pi_depth": depth,
                    "proxy": [_qt(a) for a in proxy], "chain": [[_qt(a) for a in link] for link in chain],
                    "variations": [va, vb], "sample": _qt(sample)}
        _need(witness == expected, path, "witness mismatch")
        at_lo, at_hi = _horner(proxy, lo), _horner(proxy, hi)
        _need(at_lo > 0 or (ends[0] and at_lo == 0), path, "proxy not positive at the left end")
        _need(at_hi > 0 or (ends[1] and at_hi == 0), path, "proxy not positive at the right end")
        _need(va - vb - (1 if at_hi == 0 else 0) == 0, path, "proxy has roots inside")
        _need(_horner(proxy, sample) > 0, path, "proxy not positive at the sample")
        _need(margin == 0, path, "margin mismatch")
    else:
        raise _Reject(path, f"unknown tactic {tactic}")


def _accept_zero(s):
    return s in (Sign.POSITIVE, Sign.ZERO)


def _margin(v: PiRat) -> Fraction:
    lo = v.enclose(8).lo
    return lo if lo > 0 else Fraction(0)


def _valuation(p: PolyX) -> int:
    for k, a in enumerate(p.coeffs):
        if not a.is_zero():
            return k
    return 0


def _quadratic_min(q: PolyX, lo: PiRat, hi: PiRat):
    c = list(q.coeffs) + [ZERO] * (3 - len(q.coeffs))

    def at(x):
        return c[0] + c[1] * x + c[2] * x * x
    if _sgn(c[2]) == Sign.POSITIVE:
        v = -c[1] / (c[2] * 2)
        if _sgn(v - lo) != Sign.NEGATIVE and _sgn(hi - v) != Sign.NEGATIVE:
            return "vertex", at(v)
    a, b = at(lo), at(hi)
    return ("hi", b) if _sgn(b - a) == Sign.NEGATIVE else ("lo", a)


# -- truncations -------------------------------------------------------------------

def _truncation(func, degree):
    """(polynomial, catalog entry) for a Maclaurin partial sum of sin or cos."""
    if func not in ("sin", "cos") or not isinstance(degree, int) or degree < 0 \
            or degree % 2 != (1 if func == "sin" else 0):
        raise ValueError(f"no {func} truncation of degree {degree}")
    coeffs = [Fraction(0)] * (degree + 1)

    def sign_of(k):
        # sin: + - + - on k = 1, 3, 5, ...; cos: + - + - on k = 0, 2, 4, ...
        return 1 if (k // 2) % 2 == 0 else -1
    for k in range(degree % 2, degree + 1, 2):
        coeffs[k] = Fraction(sign_of(k), factorial(k))
    m = degree + 2
    entry = {"func": func, "degree": degree, "direction": "lower" if sign_of(m) > 0 else "upper",
             "radius_sq": (m + 1) * (m + 2)}
    return PolyX([PiRat.of(a) for a in coeffs]), entry


# -- Sturm replay -------------------------------------------------------------------

def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _horner(p, x):
    acc = Fraction(0)
    for a in reversed(p):
        acc = acc * x + a
    return acc


def _normalize(p):
    if not p:
        return p
    d = 1
    for a in p:
        d = lcm(d, a.denominator)
    ints = [int(a * d) for a in p]
    g = 0
    for v in ints:
        g = gcd(g, v)
    return [Fraction(v, g) for v in ints]


def _prem(a, b):
    a = list(a)
    while a and len(a) >= len(b):
        f = a[-1] / b[-1]
        off = len(a) - len(b)
        for i, c in enumerate(b):
            a[off + i] -= f * c
        a = _trim(a[:-1])
    return a


def _sturm_chain(p):
    p = _trim(p)
    out = [_normalize(p)]
    if len(p) <= 1:
        return out
    out.append(_normalize(_trim([a * k for k, a in enumerate(p)][1:])))
    while True:
        r = _prem(out[-2], out[-1])
        if not r:
            return out
        out.append(_normalize([-a for a in r]))


def _variations(chain, x):
    signs = [v > 0 for v in (_horner(p, x) for p in chain) if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


# -- Leibniz expansion --------------------------------------------------------------

def _leibniz(F: MLTP, n: int):
    """(R, L) with F^(n) = R / L, L the product of the nonconstant log arguments to the n."""
    args = [(m, a) for m, a in F.logs if not a.is_constant()]
    L = MTP.constant(ONE)
    for _, a in args:
        L = L * a ** n
    base = F.base
    for _ in range(n):
        base = base.derivative()
    R = base * L
    for j, (m, a) in enumerate(args):
        others = MTP.constant(ONE)
        for k, (_, b) in enumerate(args):
            if k != j:
                others = others * b ** n
        da = a.derivative()
        A = da
        mult = [m]
        for _ in range(n):
            mult.append(mult[-1].derivative())
        for i in range(1, n + 1):
            if i > 1:
                A = A.derivative() * a - da * A * (i - 1)
            coeff = mult[n - i]
            if coeff.is_zero():
                continue
            R = R + MTP.from_polyx(coeff, 0, 0) * A * a ** (n - i) * others * comb(n, i)
    return R, L
