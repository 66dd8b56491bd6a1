"""High-order derivatives of an MLTP written as a quotient of two MTPs.

Past order K every log term differentiates into a rational function, so
F^(n) = f^(n) + sum over log factors of sum_i C(n, i) M^(n-i) (ln g)^(i)
with (ln g)^(i) a fraction whose denominator is a power product of
x, sin x, cos x and the polynomial log factors.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, lcm

from ..errors import OrderTooLow
from ..exact.pipoly import ONE, PiPoly, PiRat, poly_gcd
from ..exact.sign import Sign
from .atoms import COS_ATOM, SIN_ATOM, X_ATOM, Atom, collect_atoms
from .mltp import MLTP
from .mtp import MTP


@dataclass(frozen=True)
class Factor:
    """One denominator factor ``base ** exponent``; kind is one of x, sin, cos, poly, mtp."""
    kind: str
    base: MTP
    exponent: int

    def power(self) -> MTP:
        return self.base ** self.exponent


@dataclass(frozen=True)
class Quotient:
    numerator: MTP
    constant: PiRat
    factors: tuple

    def denominator(self) -> MTP:
        out = MTP.constant(self.constant)
        for f in self.factors:
            out = out * f.power()
        return out

    def mp(self, x):
        return self.numerator.mp(x) / self.denominator().mp(x)

    def rescaled(self, kappa) -> Quotient:
        """Same function with numerator and constant both multiplied by kappa.
        Polynomial factors may be rescaled by ``with_factor_scales``.
        """
        kappa = PiRat.of(kappa)
        return Quotient(self.numerator.scale(kappa), self.constant * kappa, self.factors)

    def with_factor_scales(self, scales) -> Quotient:
        """Replace each poly factor g by s*g, compensating in the constant."""
        out, const = [], self.constant
        for f, s in zip(self.factors, scales):
            s = PiRat.of(s)
            if s != ONE:
                f = Factor(f.kind, f.base.scale(s), f.exponent)
                const = const / s ** f.exponent
            out.append(f)
        return Quotient(self.numerator, const, tuple(out))

    def normalized(self) -> Quotient:
        """Polynomial factors and the numerator cleared to Z[pi] coefficients.

        Each polynomial factor is multiplied by the smallest positive scale
        making it integral; the numerator is then scaled the same way and the
        constant absorbs both, so the function is unchanged.
        """
        scales = [clearing_scale(f.base.as_polyx().coeffs) if f.kind == "poly" else ONE
                  for f in self.factors]
        q = self.with_factor_scales(scales)
        k = clearing_scale([c / q.constant for _, c in q.numerator.terms])
        return q.rescaled(k / q.constant)

    def presentations(self):
        """Numerator forms equal as functions, for minorant construction.

        Fewest trig groups first, since each group costs truncation factors;
        on a tie, forms without a bare polynomial group come first.
        """
        forms = []
        for form in (self.numerator, self.numerator.cos_reduced(), self.numerator.sin_reduced()):
            for candidate in (form, form.homogenized()):
                if candidate is not None and candidate not in forms:
                    forms.append(candidate)

        def cost(form):
            groups = form.trig_groups()
            return len(groups), (0, 0) in groups
        return sorted(forms, key=cost)


def clearing_scale(values) -> PiRat:
    """Smallest positive s in Q(pi), up to units, with s * v in Z[pi] for every v."""
    den = PiPoly([1])
    for v in values:
        den = (den * v.den).exact_quotient(poly_gcd(den, v.den))
    r = 1
    for v in values:
        r = lcm(r, (v * PiRat(den)).num.denominator)
    s = PiRat(den) * r
    return -s if s.sign() == Sign.NEGATIVE else s


class _Frac:
    """numerator / (prod of factors[i] ** exps[i]) over a shared factor list."""

    __slots__ = ("num", "exps")

    def __init__(self, num: MTP, exps: tuple):
        self.num = num
        self.exps = exps


class _Ring:
    def __init__(self, atoms):
        self.atoms = list(atoms)
        self.values = [a.mtp() for a in self.atoms]
        self.derivs = [v.derivative() for v in self.values]
        self.polys = [v.as_polyx() if a.kind == "poly" else None for a, v in zip(self.atoms, self.values)]

    def unit(self, index: int, num: MTP) -> _Frac:
        exps = [0] * len(self.atoms)
        exps[index] = 1
        return _Frac(num, tuple(exps))

    def derivative(self, fr: _Frac) -> _Frac:
        live = [i for i, e in enumerate(fr.exps) if e]
        L = MTP.constant(1)
        for i in live:
            L = L * self.values[i]
        num = fr.num.derivative() * L
        for i in live:
            others = MTP.constant(1)
            for j in live:
                if j != i:
                    others = others * self.values[j]
            num = num - fr.num * self.derivs[i] * others * fr.exps[i]
        exps = tuple(e + 1 if e else 0 for e in fr.exps)
        return self.cancel(_Frac(num, exps))

    def cancel(self, fr: _Frac) -> _Frac:
        num, exps = fr.num, list(fr.exps)
        if num.is_zero_function():
            return _Frac(MTP(), tuple(0 for _ in exps))
        for i, atom in enumerate(self.atoms):
            while exps[i]:
                if atom.kind in ("x", "sin", "cos"):
                    q = num.divide_power(atom.kind)
                elif self.polys[i] is not None:
                    q = num.divide_polyx(self.polys[i])
                else:
                    q = None
                if q is None:
                    break
                num, exps[i] = q, exps[i] - 1
        return _Frac(num, tuple(exps))

    def combine(self, fracs) -> _Frac:
        width = len(self.atoms)
        top = [max((f.exps[i] for f in fracs), default=0) for i in range(width)]
        total = MTP()
        for f in fracs:
            pad = MTP.constant(1)
            for i in range(width):
                if top[i] > f.exps[i]:
                    pad = pad * self.values[i] ** (top[i] - f.exps[i])
            total = total + f.num * pad
        return self.cancel(_Frac(total, tuple(top)))


def log_derivative_series(atom: Atom, ring: _Ring, index: int, upto: int):
    """[(ln atom)^(1), ..., (ln atom)^(upto)] as fractions."""
    first = ring.cancel(ring.unit(index, ring.derivs[index]))
    out = [first]
    while len(out) < upto:
        out.append(ring.derivative(out[-1]))
    return out


def derivative_quotient(F: MLTP, order: int) -> Quotient:
    """F^(order) = numerator / (constant * prod factors), requiring order > K."""
    if order <= F.K:
        raise OrderTooLow(f"order {order} does not exceed K = {F.K}")
    pairs = [(a, m) for a, m in collect_atoms(F) if a.kind != "const"]
    atoms = [X_ATOM, SIN_ATOM, COS_ATOM] + [a for a, _ in pairs if a not in (X_ATOM, SIN_ATOM, COS_ATOM)]
    ring = _Ring(atoms)
    base = F.base
    for _ in range(order):
        base = base.derivative()
    fracs = [_Frac(base, tuple(0 for _ in atoms))]
    for atom, mult in pairs:
        index = atoms.index(atom)
        lowest = max(1, order - mult.degree)
        series = log_derivative_series(atom, ring, index, order)
        for i in range(lowest, order + 1):
            coeff = mult
            for _ in range(order - i):
                coeff = coeff.derivative()
            if coeff.is_zero():
                continue
            fr = series[i - 1]
            fracs.append(_Frac(fr.num * MTP.from_polyx(coeff) * comb(order, i), fr.exps))
    total = ring.combine(fracs)
    factors = tuple(Factor(atom.kind, ring.values[i], e)
                    for i, (atom, e) in enumerate(zip(atoms, total.exps)) if e)
    kinds = {f.kind for f in factors}
    num = total.num.sin_reduced() if "cos" in kinds and "sin" not in kinds else total.num.cos_reduced()
    return Quotient(num, ONE, factors)
