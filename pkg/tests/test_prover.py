import copy
import inspect
import json
import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

import oracles as o
from mtprove.errors import BasePositivityFailed, PointOutsideInterval, ProofNotFound, SideConditionFailed
from mtprove.exact import PI
from mtprove.exact.domain import HALF_PI, Interval
from mtprove.exact.pipoly import PiRat
from mtprove.prover import AUTO, Certificate, Config, check, load_problem, parse_problem, prove
from mtprove.prover import checker as checker_module
from mtprove.prover.engine import exponent_reduce, log_reduce, split_nodes
from mtprove.prover.casestudy import PROBLEM_DIR
from mtprove.symbolic.mltp import to_mltp
from mtprove.symbolic.mtp import MTP
from mtprove.symbolic.parser import parse_expr

mpmath.mp.dps = 50


@pytest.fixture(scope="module")
def nishizawa():
    pf = load_problem("nishizawa")
    return pf, prove(pf.problem, pf.strategy)


def _problem(text):
    return parse_problem(text).problem


def test_log_reduce_matches_hand_form():
    p = load_problem("nishizawa").problem
    F, data, proofs = log_reduce(p)
    expected = to_mltp(parse_expr(f"ln(sin(x)) - ln(x) - ({o.THETA})*ln({o.BASE})"))
    assert F == expected
    assert F.K == 3
    assert [n.kind for n in proofs] == ["DomainSign", "DomainSign", "PolySign"]
    assert data["relation"] == ">"


def test_log_reduce_requires_positive_sides():
    with pytest.raises(BasePositivityFailed):
        log_reduce(_problem("prove cos(x) - 1/2 > x - 1 on (0, pi/2)"))


def test_exponent_reduce_side_condition():
    F = to_mltp(parse_expr(f"ln(sin(x)) - ln(x) - ({o.THETA})*ln({o.BASE})"))
    left = Interval(PiRat.of(0), o.C_POINT, False, True)
    theta1 = -o.poly(o.THETA1)
    F1, data, (side, base) = exponent_reduce(F, theta1, left)
    assert data["base_side"] == "below_one"
    assert F1.K == 2
    assert side.data["certificate"]["strict"] is False
    # replacing the multiplier by itself leaves a zero side condition
    same = -o.poly(o.THETA)
    _, _, (side, _) = exponent_reduce(F, same, left)
    assert side.data["certificate"]["tactic"] == "Zero"
    # on the whole interval theta1 is not below theta
    with pytest.raises(SideConditionFailed):
        exponent_reduce(F, theta1, Interval(PiRat.of(0), HALF_PI))


def test_split_nodes():
    iv = Interval(PiRat.of(0), HALF_PI)
    (left, right), facts = split_nodes(iv, PI / 4)
    assert left == Interval(PiRat.of(0), PI / 4, False, True)
    assert right == Interval(PI / 4, HALF_PI, False, False)
    assert [f.data["sign"] for f in facts] == ["positive", "positive"]
    with pytest.raises(PointOutsideInterval):
        split_nodes(iv, PiRat.of(2))


def test_polynomial_problem_uses_k_minus_one():
    p = _problem("prove x^2 + 1 > 2*x - 1 on (0, 1)")
    cert = prove(p)
    assert cert.root.kind in ("DirectReduce", "LogReduce")
    kinds = [n.kind for _, n in cert.root.walk()]
    assert "TheoremTH" in kinds
    theorem = next(n for _, n in cert.root.walk() if n.kind == "TheoremTH")
    assert theorem.data["K"] == -1 and theorem.data["derivative_order"] == 0
    assert check(cert, p)


def test_sine_below_identity():
    p = load_problem("sine_below_identity").problem
    cert = prove(p)
    kinds = [n.kind for _, n in cert.root.walk()]
    assert "TrigMinorant" in kinds and "PolySign" in kinds
    assert check(cert, p)


def test_false_statement_is_not_proved():
    p = load_problem("false").problem
    with pytest.raises(ProofNotFound):
        prove(p)


def test_nishizawa_accepted(nishizawa):
    pf, cert = nishizawa
    verdict = check(cert, pf.problem)
    assert verdict.accepted, str(verdict)
    assert check(cert.dumps(), pf.problem)
    assert check(cert.to_json(), pf.problem)


def test_wrong_problem_rejected(nishizawa):
    _, cert = nishizawa
    verdict = check(cert, load_problem("sine_below_identity").problem)
    assert not verdict and "different problem" in verdict.reason


def _nodes(data, path=()):
    yield path, data
    for i, child in enumerate(data["children"]):
        yield from _nodes(child, path + (i,))


def test_flipped_sign_rejected_at_node(nishizawa):
    pf, cert = nishizawa
    data = cert.to_json()
    flipped = 0
    for path, node in _nodes(data["root"]):
        if node["kind"] != "PolySign" or node["certificate"]["claimed"] != "positive":
            continue
        mutated = copy.deepcopy(data)
        target = mutated["root"]
        for i in path:
            target = target["children"][i]
        target["certificate"]["claimed"] = "negative"
        verdict = check(mutated, pf.problem)
        assert not verdict
        assert verdict.path == path
        flipped += 1
    assert flipped >= 5


def test_forged_radius_rejected():
    p = _problem("prove x > sin(x) on (0, 1)")
    cert = prove(p)
    node = next(n for _, n in cert.root.walk() if n.kind == "TrigMinorant")
    radius = node.data["bounds"][0]["radius_sq"]
    text = json.dumps(cert.to_json()).replace(f'"radius_sq": {radius}', f'"radius_sq": {radius * 20}')
    verdict = check(json.loads(text), p)
    assert not verdict and "truncation" in verdict.reason


def test_truncation_outside_radius_rejected():
    # cos x <= 1 is recorded with radius^2 = 12; replay the same node on (0, 4)
    p = _problem("prove 2 > cos(x) on (0, 1)")
    node = next(n for _, n in prove(p).root.walk() if n.kind == "TrigMinorant")
    assert node.data["bounds"] == [{"func": "cos", "degree": 0, "direction": "upper", "radius_sq": 12}]
    wide = Interval(PiRat.of(0), PiRat.of(4))
    text = json.dumps(node.to_json())
    text = text.replace(json.dumps(Interval(PiRat.of(0), PiRat.of(1)).to_json()), json.dumps(wide.to_json()))
    text = text.replace('"hull": ["0/1", "1/1"]', '"hull": ["0/1", "4/1"]')
    forged = json.loads(text)
    g = MTP.from_json(forged["target"])
    with pytest.raises(checker_module._Reject, match="validity radius"):
        checker_module._Checker().minorant(forged, g, wide, ())


def test_checker_truncation_catalog():
    _, entry = checker_module._truncation("sin", 1)
    assert entry == {"func": "sin", "degree": 1, "direction": "upper", "radius_sq": 20}
    _, entry = checker_module._truncation("sin", 5)
    assert entry["direction"] == "upper" and entry["radius_sq"] == 72
    _, entry = checker_module._truncation("cos", 6)
    assert entry["direction"] == "lower" and entry["radius_sq"] == 90


def _leaves(obj, path=()):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from _leaves(v, path + (k,))
    elif isinstance(obj, list):
        if not obj:
            yield path
        for i, v in enumerate(obj):
            yield from _leaves(v, path + (i,))
    else:
        yield path


def _mutate(value, rng):
    if isinstance(value, bool):
        return not value
    if isinstance(value, int):
        return value + rng.choice([-1, 1, 2])
    if value is None:
        return {"func": "cos", "degree": 2, "direction": "lower", "radius_sq": 30}
    if isinstance(value, list):
        return [0]
    if "/" in value:
        num, den = value.split("/")
        return f"{int(num) + rng.choice([-1, 1])}/{den}"
    try:
        return str(int(value) + rng.choice([-1, 1]))
    except ValueError:
        return {"positive": "negative", "negative": "positive", "zero": "positive"}.get(value, value + "_")


def test_mutation_testing(nishizawa):
    pf, cert = nishizawa
    data = cert.to_json()
    leaves = list(_leaves(data["root"], ("root",)))
    rng = random.Random(2024)
    survivors = []
    for path in rng.sample(leaves, 120):
        mutated = copy.deepcopy(data)
        parent = mutated
        for key in path[:-1]:
            parent = parent[key]
        parent[path[-1]] = _mutate(parent[path[-1]], rng)
        if check(mutated, pf.problem):
            survivors.append(path)
    assert survivors == []


def test_checker_shares_no_search_code():
    source = inspect.getsource(checker_module)
    imported = [line.split()[1] for line in source.splitlines() if line.startswith("from ")]
    banned = ("..polycert", "..bounds", ".engine", "..symbolic.quotient", ".casestudy")
    assert imported and not [m for m in imported if m.startswith(banned)]


# -- soundness fuzz -------------------------------------------------------------------

def _monomial(rng, allow_negative=True):
    a = rng.randint(1, 5) * (rng.choice([-1, 1]) if allow_negative else 1)
    den = rng.choice([1, 2, 3])
    p, q, r = rng.randint(0, 2), rng.randint(0, 2), rng.randint(0, 2)
    parts = [f"({a}/{den})"]
    parts += ["x"] * p + ["cos(x)"] * q + ["sin(x)"] * r
    return "*".join(parts)


def _interval(rng):
    choice = rng.random()
    if choice < 0.3:
        return "(0, pi/2)"
    lo = Fraction(rng.randint(0, 10), 10)
    hi = lo + Fraction(rng.randint(1, 5), 10)
    return f"({lo.numerator}/{lo.denominator}, {hi.numerator}/{hi.denominator})"


def _growth_problem(rng):
    # base above 1 raised to a positive exponent
    terms = " + ".join(f"{rng.randint(1, 4)}/{rng.randint(1, 5)}*x^{rng.randint(1, 3)}" for _ in range(rng.randint(1, 2)))
    exponent = f"{rng.randint(1, 3)} + x/{rng.randint(1, 4)}" if rng.random() < 0.5 else str(rng.randint(1, 4))
    return f"prove (1 + {terms})^({exponent}) > 1 on {_interval(rng)}"


def _true_problem(rng):
    if rng.random() < 0.25:
        return _growth_problem(rng)
    rhs = " + ".join(_monomial(rng) for _ in range(rng.randint(1, 3)))
    gap = " + ".join(_monomial(rng, False) for _ in range(rng.randint(1, 2)))
    c = Fraction(rng.randint(1, 20), 10)
    lhs = f"{rhs} + {gap} + {c.numerator}/{c.denominator}"
    if rng.random() < 0.5:
        return f"prove {lhs} > {rhs} on {_interval(rng)}"
    return f"prove {rhs} < {lhs} on {_interval(rng)}"


def _false_problem(rng):
    rhs = " + ".join(_monomial(rng) for _ in range(rng.randint(1, 3)))
    gap = " + ".join(_monomial(rng, False) for _ in range(rng.randint(1, 2)))
    lhs = f"{rhs} - ({gap})"
    return f"prove {lhs} > {rhs} on {_interval(rng)}"


FAST = Config(timeout_seconds=20, split_depth=2)


def test_soundness_fuzz_true_problems():
    rng = random.Random(31)
    proved = 0
    for _ in range(200):
        p = _problem(_true_problem(rng))
        try:
            cert = prove(p, AUTO, FAST)
        except ProofNotFound:
            continue
        verdict = check(cert, p)
        assert verdict.accepted, (p.render(), str(verdict))
        proved += 1
    assert proved >= 150


def test_soundness_fuzz_false_problems():
    rng = random.Random(53)
    for _ in range(50):
        p = _problem(_false_problem(rng))
        try:
            cert = prove(p, AUTO, FAST)
        except ProofNotFound:
            continue
        assert not check(cert, p), p.render()


# -- serialization and determinism --------------------------------------------------------

def test_json_round_trip(nishizawa):
    _, cert = nishizawa
    text = cert.dumps()
    again = Certificate.loads(text)
    assert again == cert
    assert again.dumps() == text


def test_determinism(nishizawa):
    pf, cert = nishizawa
    assert prove(pf.problem, pf.strategy).dumps() == cert.dumps()


@pytest.mark.parametrize("path", sorted(PROBLEM_DIR.glob("*.mtp")), ids=lambda p: p.stem)
def test_grammar_round_trip(path):
    pf = parse_problem(path.read_text(encoding="utf-8"))
    again = parse_problem(pf.render())
    assert again.problem == pf.problem
    assert again.strategy == pf.strategy
    assert parse_problem(again.render()).render() == again.render()


@given(st.integers(1, 9), st.integers(1, 9), st.integers(0, 3))
@settings(max_examples=25, deadline=None)
def test_rendered_problems_reparse(a, b, k):
    text = f"prove {a}/{b}*x^{k} + sin(x) > cos(x)/{b} - {a} on [1/{b}, pi/2)"
    pf = parse_problem(text)
    assert parse_problem(pf.render()).problem == pf.problem


def test_statement_holds_numerically():
    theta = lambda x: (-(mpmath.pi ** 3 - 24 * mpmath.pi + 48) / (3 * (mpmath.pi - 2) * mpmath.pi ** 3) * x ** 3
                       + mpmath.pi ** 3 / (24 * (mpmath.pi - 2)))
    base = lambda x: 2 / mpmath.pi + (mpmath.pi - 2) / mpmath.pi ** 3 * (mpmath.pi ** 2 - 4 * x ** 2)
    lo, hi = mpmath.mpf("1e-3"), mpmath.pi / 2 - mpmath.mpf("1e-3")
    for i in range(1000):
        x = lo + (hi - lo) * i / 999
        assert mpmath.log(mpmath.sin(x) / x) - theta(x) * mpmath.log(base(x)) > 0
