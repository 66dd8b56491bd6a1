"""Markdown walkthrough of the case-study certificate."""

from __future__ import annotations

from ..exact.constexpr import enclose_const, pirat_text
from ..exact.pipoly import PiRat
from ..exact.sign import Sign
from .casestudy import Intermediates
from .certificate import Certificate
from .checker import Verdict

_SIGN_CHAR = {Sign.POSITIVE: "+", Sign.NEGATIVE: "-"}


def approx(value, digits: int = 6) -> str:
    """Decimal approximation of a PiRat or ConstExpr for display only."""
    enc = value.enclose(16) if isinstance(value, PiRat) else enclose_const(value, 16, 64)
    mid = (enc.lo + enc.hi) / 2
    return f"{float(mid):.{digits}g}"


def _kinds(cert: Certificate):
    counts = {}
    for _, node in cert.root.walk():
        counts[node.kind] = counts.get(node.kind, 0) + 1
    return ", ".join(f"{k} x{v}" for k, v in sorted(counts.items()))


def _bound_line(b):
    shown = f" (value {approx(b.value)})" if b.value is not None else ""
    tactic = f", certified by {b.certificate.tactic}" if b.certificate is not None else ""
    return f"- {b.label} > {pirat_text(b.threshold)}{shown}{tactic}"


def render_report(cert: Certificate, inter: Intermediates, verdict: Verdict, seconds: float) -> str:
    b = inter.bounds
    signs = "".join(_SIGN_CHAR[inter.P14.coefficient(k).sign()] for k in range(14, -1, -2))
    lines = [
        "# Sine-ratio inequality with a cubic exponent",
        "",
        f"Statement: `{cert.problem.render()}`",
        "",
        f"Checker verdict: **{verdict}**. Search and assembly took {seconds:.2f} s.",
        f"Certificate nodes: {_kinds(cert)}.",
        "",
        "## Reduction",
        "",
        "Both sides are positive on the interval, so taking logarithms gives an MLTP",
        "F(x) = ln(sin x) - ln x - theta(x) ln(base(x)) that must be positive.",
        f"The interval is split at c = {pirat_text(inter.c)} ~ {approx(inter.c)},",
        f"the root of the cubic side condition, with c1 = pi/2 - c ~ {approx(inter.c1)}.",
        "",
        "## Left part (0, c]",
        "",
        "- The base lies below 1, so theta may be replaced by the quadratic theta1 <= theta.",
        "- F1 and its first two derivatives tend to "
        + ", ".join(approx(v) for v in inter.f1_limits) + " at 0+.",
        "- The third derivative is (2 A(x) sin^3 x + B(x) cos x) / (45 x^3 sin^3 x (pi^3 - 4(pi - 2) x^2)^3).",
        f"- C(x) = {inter.C}",
        "- B(x) = 90 x^3 C(x).",
        f"- A(x) <= {approx(inter.a_bound, 9)} < 0 on [0, c] by the endpoint bound.",
        "- sin x < T5(x) (valid for x^2 < 72) and cos x > T6(x) (valid for x^2 < 90) give",
        "  2 A T5^3 + B T6 = x^9 / 864000 P14(x).",
        f"- P14 has degree {inter.P14.degree} and even-coefficient signs ({', '.join(signs)}).",
        "- Pair checks at the rational upper bound of c:",
    ]
    lines += [f"  - {p.label} ~ {approx(p.value)} > 0" for p in inter.pair_checks]
    lines += [
        "",
        "## Right part (c, pi/2), reflected to (0, c1)",
        "",
        "- After x -> pi/2 - x the base exceeds 1 and the exponent is replaced by omega1(x) = x/5 + 1.",
        f"- G1(0) = {approx(inter.g1_limits[0])} and G1'(0) = (1/5) ln(pi/2) - (2 pi - 6)/pi"
        f" ~ {approx(inter.g1_limits[1], 4)} > 0.",
        "- The second derivative has numerator P(x) cos^2 x - Q(x) sin^2 x with",
        f"  Q(x) = {inter.Q}.",
        "- P = phi1 + 4 x^3 (pi - 2)((40 - 20 pi) x^3 + phi2) with quadratic phi1, phi2:",
        _bound_line(b["y1"]),
        _bound_line(b["y2"]),
        _bound_line(b["P"]),
        "- cos x > 1 - x^2/2 (valid for x^2 < 30) and sin x < x (valid for x^2 < 20) give",
        "  T10(x) = P(x)(1 - x^2/2)^2 - Q(x) x^2.",
        "- Splitting T10 into psi1 + psi2 + psi3 + psi4 on (0, 23/100):",
        _bound_line(b["psi1"]),
        _bound_line(b["psi2"]),
        _bound_line(b["psi3"]),
        _bound_line(b["psi4"]),
        _bound_line(b["T10"]),
        "",
        "Bound chain: psi1 > 0, psi2 > 0, psi3 > -27, psi4 > 54, hence T₁₀ > 27",
        "",
    ]
    return "\n".join(lines)
