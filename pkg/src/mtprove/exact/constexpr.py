"""Constant expressions over Q(pi) with natural logarithms.

Trees are immutable.  Three services live here: rigorous enclosures,
a sign oracle that never returns a wrong sign, and a normal form that
rewrites linear combinations of logarithms over a coprime factor basis so
identities such as ln(pi/2) + ln(2/pi) = 0 are recognised exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from ..errors import UndecidableAtBudget, UndecidableAtDepth
from .enclosure import Enclosure
from .logs import ln_enclosure
from .pipoly import ONE, PI, ZERO, PiPoly, PiRat, poly_gcd
from .sign import Sign

DEFAULT_PI_DEPTH = 8
DEFAULT_LN_TERMS = 32
DEFAULT_ROUNDS = 4


class ConstExpr:
    __slots__ = ()

    def __add__(self, other):
        return Add(self, const(other))

    def __radd__(self, other):
        return Add(const(other), self)

    def __sub__(self, other):
        return Sub(self, const(other))

    def __rsub__(self, other):
        return Sub(const(other), self)

    def __mul__(self, other):
        return Mul(self, const(other))

    def __rmul__(self, other):
        return Mul(const(other), self)

    def __truediv__(self, other):
        return Div(self, const(other))

    def __rtruediv__(self, other):
        return Div(const(other), self)

    def __neg__(self):
        return Neg(self)

    def __pow__(self, n: int):
        if n < 0:
            return Div(Lit(PiRat.of(1)), self ** (-n))
        if n == 0:
            return Lit(PiRat.of(1))
        out = self
        for _ in range(n - 1):
            out = Mul(out, self)
        return out

    def has_ln(self) -> bool:
        raise NotImplementedError


@dataclass(frozen=True, slots=True)
class Lit(ConstExpr):
    value: PiRat

    def has_ln(self):
        return False


@dataclass(frozen=True, slots=True)
class Add(ConstExpr):
    left: ConstExpr
    right: ConstExpr

    def has_ln(self):
        return self.left.has_ln() or self.right.has_ln()


@dataclass(frozen=True, slots=True)
class Sub(ConstExpr):
    left: ConstExpr
    right: ConstExpr

    def has_ln(self):
        return self.left.has_ln() or self.right.has_ln()


@dataclass(frozen=True, slots=True)
class Mul(ConstExpr):
    left: ConstExpr
    right: ConstExpr

    def has_ln(self):
        return self.left.has_ln() or self.right.has_ln()


@dataclass(frozen=True, slots=True)
class Div(ConstExpr):
    left: ConstExpr
    right: ConstExpr

    def has_ln(self):
        return self.left.has_ln() or self.right.has_ln()


@dataclass(frozen=True, slots=True)
class Neg(ConstExpr):
    arg: ConstExpr

    def has_ln(self):
        return self.arg.has_ln()


@dataclass(frozen=True, slots=True)
class Ln(ConstExpr):
    arg: ConstExpr

    def has_ln(self):
        return True


def const(value) -> ConstExpr:
    if isinstance(value, ConstExpr):
        return value
    return Lit(PiRat.of(value))


def ln(value) -> ConstExpr:
    return Ln(const(value))


PI_EXPR = Lit(PI)


# -- exact folding ------------------------------------------------------------

def to_pirat(e: ConstExpr):
    """Exact value in Q(pi), or None when the tree contains ln."""
    if isinstance(e, Lit):
        return e.value
    if isinstance(e, Neg):
        v = to_pirat(e.arg)
        return None if v is None else -v
    if isinstance(e, Ln):
        return None
    a = to_pirat(e.left)
    if a is None:
        return None
    b = to_pirat(e.right)
    if b is None:
        return None
    if isinstance(e, Add):
        return a + b
    if isinstance(e, Sub):
        return a - b
    if isinstance(e, Mul):
        return a * b
    if b.is_zero():
        raise ZeroDivisionError("constant division by zero")
    return a / b


# -- enclosures -----------------------------------------------------------------

def enclose_const(e: ConstExpr, pi_depth: int = DEFAULT_PI_DEPTH,
                  ln_terms: int = DEFAULT_LN_TERMS) -> Enclosure:
    pi_depth = DEFAULT_PI_DEPTH if pi_depth is None else pi_depth
    ln_terms = DEFAULT_LN_TERMS if ln_terms is None else ln_terms
    kind, value = _enc(e, pi_depth, ln_terms)
    return value.enclose(pi_depth) if kind == "exact" else value


def _enc(e, depth, terms):
    if not e.has_ln():
        try:
            return "exact", to_pirat(e)
        except ZeroDivisionError as exc:
            raise UndecidableAtDepth(str(exc)) from None
    if isinstance(e, Neg):
        return "enc", -_as_enc(_enc(e.arg, depth, terms), depth)
    if isinstance(e, Ln):
        arg = _as_enc(_enc(e.arg, depth, terms), depth)
        if arg.lo <= 0:
            raise UndecidableAtDepth("ln argument not certified positive")
        return "enc", ln_enclosure(arg, terms)
    a = _as_enc(_enc(e.left, depth, terms), depth)
    b = _as_enc(_enc(e.right, depth, terms), depth)
    if isinstance(e, Add):
        return "enc", a + b
    if isinstance(e, Sub):
        return "enc", a - b
    if isinstance(e, Mul):
        return "enc", a * b
    try:
        return "enc", a / b
    except ZeroDivisionError:
        raise UndecidableAtDepth("denominator not certified nonzero") from None


def _as_enc(item, depth):
    kind, value = item
    return value.enclose(depth) if kind == "exact" else value


# -- log normal form --------------------------------------------------------------

def _linearize(e):
    """(rational part, [(coefficient, argument)]) or None if not linear in ln."""
    if not e.has_ln():
        return to_pirat(e), []
    if isinstance(e, Ln):
        arg = to_pirat(e.arg) if not e.arg.has_ln() else None
        if arg is None:
            return None
        return ZERO, [(ONE, arg)]
    if isinstance(e, Neg):
        inner = _linearize(e.arg)
        if inner is None:
            return None
        r, logs = inner
        return -r, [(-c, a) for c, a in logs]
    if isinstance(e, (Add, Sub)):
        left = _linearize(e.left)
        right = _linearize(e.right)
        if left is None or right is None:
            return None
        sgn = 1 if isinstance(e, Add) else -1
        return (left[0] + right[0] * sgn,
                left[1] + [(c * sgn, a) for c, a in right[1]])
    if isinstance(e, Mul):
        if not e.left.has_ln():
            k, other = to_pirat(e.left), e.right
        elif not e.right.has_ln():
            k, other = to_pirat(e.right), e.left
        else:
            return None
        inner = _linearize(other)
        if inner is None:
            return None
        return inner[0] * k, [(c * k, a) for c, a in inner[1]]
    if isinstance(e, Div):
        if e.right.has_ln():
            return None
        k = to_pirat(e.right)
        if k.is_zero():
            raise ZeroDivisionError("constant division by zero")
        inner = _linearize(e.left)
        if inner is None:
            return None
        return inner[0] / k, [(c / k, a) for c, a in inner[1]]
    return None


def _refine(items, gcd_fn, div_fn, is_unit):
    base = []
    for item in items:
        if not is_unit(item) and item not in base:
            base.append(item)
    changed = True
    while changed:
        changed = False
        for i in range(len(base)):
            for j in range(i + 1, len(base)):
                g = gcd_fn(base[i], base[j])
                if is_unit(g):
                    continue
                a, b = base[i], base[j]
                rest = [x for k, x in enumerate(base) if k not in (i, j)]
                for piece in (div_fn(a, g), g, div_fn(b, g)):
                    if not is_unit(piece) and piece not in rest:
                        rest.append(piece)
                base = rest
                changed = True
                break
            if changed:
                break
    return base


def _multiplicities(x, base, div_fn, divides):
    out = {}
    for b in base:
        n = 0
        while divides(b, x):
            x = div_fn(x, b)
            n += 1
        if n:
            out[b] = n
    return out


def _int_div(a, b):
    return a // b


def _poly_div(a, b):
    return a.exact_quotient(b).primitive()


def _poly_divides(b, a):
    if a.degree < b.degree:
        return False
    return a.divmod(b)[1].is_zero()


def _positive_at_pi(p: PiPoly) -> PiPoly:
    return p if p.sign() > 0 else -p


class LogNormalForm:
    """rational + sum(coef_k * ln(base_k)) with pairwise coprime bases."""

    def __init__(self, rational, logs):
        self.rational = rational
        self.logs = logs  # list of (coefficient PiRat, base PiRat), canonical order

    def is_log_free(self):
        return not self.logs

    def to_expr(self) -> ConstExpr:
        expr = None if self.rational.is_zero() and self.logs else Lit(self.rational)
        for coef, base in self.logs:
            term = Ln(Lit(base)) if coef == ONE else Mul(Lit(coef), Ln(Lit(base)))
            expr = term if expr is None else Add(expr, term)
        return expr


def log_normal_form(e: ConstExpr):
    """Normal form of an expression linear in ln, or None if it is not linear."""
    lin = _linearize(e)
    if lin is None:
        return None
    rational, logs = lin
    int_items, poly_items = [], []
    decomposed = []
    for coef, arg in logs:
        if coef.is_zero():
            continue
        if arg.sign() <= 0:
            raise ValueError(f"ln of nonpositive constant {arg}")
        num_c = arg.num.content()
        num_p = arg.num.primitive()
        den_p = arg.den
        r = num_c
        polys = []
        for p, e_sign in ((num_p, 1), (den_p, -1)):
            if p.is_constant():
                continue
            q = _positive_at_pi(p)
            if q != p:
                r = -r
            polys.append((q, e_sign))
            poly_items.append(q)
        if r <= 0:
            raise ValueError(f"ln of nonpositive constant {arg}")
        int_items.extend([r.numerator, r.denominator])
        decomposed.append((coef, r, polys))
    int_base = sorted(_refine(int_items, gcd, _int_div, lambda n: n == 1))
    poly_base = _refine(poly_items, poly_gcd, _poly_div, lambda p: p.is_constant())
    poly_base = sorted((_positive_at_pi(p) for p in poly_base),
                       key=lambda p: (p.degree, p.int_coefficients))
    totals = {}
    for coef, r, polys in decomposed:
        for n, mult in _multiplicities(r.numerator, int_base, _int_div,
                                       lambda b, a: a % b == 0).items():
            totals[("n", n)] = totals.get(("n", n), ZERO) + coef * mult
        for n, mult in _multiplicities(r.denominator, int_base, _int_div,
                                       lambda b, a: a % b == 0).items():
            totals[("n", n)] = totals.get(("n", n), ZERO) - coef * mult
        for p, e_sign in polys:
            for b, mult in _multiplicities(p, poly_base, _poly_div, _poly_divides).items():
                b = _positive_at_pi(b)
                key = ("p", b.int_coefficients)
                totals[key] = totals.get(key, ZERO) + coef * (mult * e_sign)
    out = []
    for n in int_base:
        c = totals.get(("n", n))
        if c is not None and not c.is_zero():
            out.append((c, PiRat.of(n)))
    for b in poly_base:
        c = totals.get(("p", b.int_coefficients))
        if c is not None and not c.is_zero():
            out.append((c, PiRat(b)))
    return LogNormalForm(rational, out)


def simplify(e: ConstExpr) -> ConstExpr:
    """Exact normal form when one exists; the input tree otherwise."""
    if not e.has_ln():
        return Lit(to_pirat(e))
    nf = log_normal_form(e)
    return e if nf is None else nf.to_expr()


# -- sign oracle ----------------------------------------------------------------------

def sign_const(e: ConstExpr, budget: int = DEFAULT_ROUNDS) -> Sign:
    """Certified sign; raises UndecidableAtBudget instead of guessing."""
    if not e.has_ln():
        try:
            value = to_pirat(e)
        except ZeroDivisionError:
            raise UndecidableAtBudget("division by zero") from None
        if value.is_zero():
            return Sign.ZERO
        return value.sign(budget)
    nf = None
    try:
        nf = log_normal_form(e)
    except (ValueError, ZeroDivisionError):
        nf = None
    if nf is not None:
        if nf.is_log_free():
            return Sign.ZERO if nf.rational.is_zero() else nf.rational.sign(budget)
        e = nf.to_expr()
    depth, terms = DEFAULT_PI_DEPTH, DEFAULT_LN_TERMS
    for _ in range(budget):
        try:
            s = enclose_const(e, depth, terms).sign()
        except UndecidableAtDepth:
            s = None
        if s is not None and s != Sign.ZERO:
            return s
        depth *= 2
        terms *= 2
    raise UndecidableAtBudget("zero not excluded within budget")


def uses_pi(e: ConstExpr) -> bool:
    """Whether enclosing e depends on the pi depth (ln-free parts fold exactly)."""
    if not e.has_ln():
        return not to_pirat(e).is_rational()
    if isinstance(e, (Neg, Ln)):
        return uses_pi(e.arg)
    return uses_pi(e.left) or uses_pi(e.right)


def enclosure_budget(e: ConstExpr, pi_depth: int, ln_terms: int):
    """The budget pair as recorded: None for a budget the enclosure ignores."""
    return (pi_depth if uses_pi(e) else None), (ln_terms if e.has_ln() else None)


def certified_enclosure(e: ConstExpr, budget: int = DEFAULT_ROUNDS, pi_depth: int = DEFAULT_PI_DEPTH,
                        ln_terms: int = DEFAULT_LN_TERMS):
    """(sign, enclosure, pi_depth, ln_terms) of the first round that excludes zero.

    The returned budgets are None where the enclosure does not depend on them.
    """
    depth, terms = pi_depth, ln_terms
    for _ in range(budget):
        try:
            enc = enclose_const(e, depth, terms)
        except UndecidableAtDepth:
            enc = None
        if enc is not None and enc.sign() not in (None, Sign.ZERO):
            return (enc.sign(), enc) + enclosure_budget(e, depth, terms)
        depth *= 2
        terms *= 2
    raise UndecidableAtBudget("zero not excluded within budget")


# -- text and JSON ----------------------------------------------------------------

def pirat_text(value: PiRat) -> str:
    num = _pipoly_text(value.num)
    if value.den.is_constant():
        return num
    return f"({num})/({_pipoly_text(value.den)})"


def _pipoly_text(p: PiPoly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for k in range(p.degree, -1, -1):
        c = p.coefficients[k]
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = _frac_text(mag)
        else:
            power = "pi" if k == 1 else f"pi^{k}"
            if mag == 1:
                body = power
            elif mag.denominator == 1:
                body = f"{mag.numerator}*{power}"
            elif mag.numerator == 1:
                body = f"{power}/{mag.denominator}"
            else:
                body = f"{mag.numerator}*{power}/{mag.denominator}"
        parts.append(("-" if c < 0 else "+", body))
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sgn, body in parts[1:]:
        text += f" {sgn} {body}"
    return text


def _frac_text(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def render_const(e: ConstExpr) -> str:
    if isinstance(e, Lit):
        return f"({pirat_text(e.value)})"
    if isinstance(e, Neg):
        return f"(-{render_const(e.arg)})"
    if isinstance(e, Ln):
        return f"ln({render_const(e.arg)})"
    op = {Add: "+", Sub: "-", Mul: "*", Div: "/"}[type(e)]
    return f"({render_const(e.left)} {op} {render_const(e.right)})"


def pipoly_to_json(p: PiPoly):
    return [_frac_text(c) for c in p.coefficients]


def pipoly_from_json(data) -> PiPoly:
    return PiPoly([Fraction(c) for c in data])


def pirat_to_json(value: PiRat):
    return {"num": pipoly_to_json(value.num), "den": pipoly_to_json(value.den)}


def pirat_from_json(data) -> PiRat:
    return PiRat(pipoly_from_json(data["num"]), pipoly_from_json(data["den"]))


_OPS = {Add: "add", Sub: "sub", Mul: "mul", Div: "div"}
_OPS_BACK = {v: k for k, v in _OPS.items()}


def const_to_json(e: ConstExpr):
    if isinstance(e, Lit):
        return {"op": "lit", "value": pirat_to_json(e.value)}
    if isinstance(e, Neg):
        return {"op": "neg", "args": [const_to_json(e.arg)]}
    if isinstance(e, Ln):
        return {"op": "ln", "args": [const_to_json(e.arg)]}
    return {"op": _OPS[type(e)], "args": [const_to_json(e.left), const_to_json(e.right)]}


def const_from_json(data) -> ConstExpr:
    op = data["op"]
    if op == "lit":
        return Lit(pirat_from_json(data["value"]))
    args = [const_from_json(a) for a in data["args"]]
    if op == "neg":
        return Neg(args[0])
    if op == "ln":
        return Ln(args[0])
    return _OPS_BACK[op](*args)
