"""Problem statements and the problem-file format.

A file holds optional definitions, one ``prove`` line and an optional
``strategy`` line; ``#`` starts a comment::

    theta(x) = x/5 + 1
    c = pi/4
    prove sin(x)/x > (1 - x^2/6)^(theta(x)) on (0, pi/2)
    strategy split(c) [theorem, reflect theorem]

Strategy steps::

    step := "auto" | "theorem" ("(" integer ")")?
          | "multiplier" "(" expr ")" step
          | "split" "(" const ")" "[" step "," step "]"
          | "reflect" step

``theorem(n)`` starts the minorant search at truncation level n;
``multiplier(e)`` replaces the polynomial multiplier of the log term with
the highest multiplier degree by e (the exponent-comparison step).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import NotMLTP, ParseError
from ..exact.constexpr import to_pirat
from ..exact.domain import HALF_PI, Interval
from ..exact.pipoly import PiRat
from ..exact.sign import Sign
from ..symbolic import expr as E
from ..symbolic.parser import Definition, Parser, RESERVED


@dataclass(frozen=True)
class Problem:
    lhs: E.Expr
    relation: str
    rhs: E.Expr
    interval: Interval

    def __post_init__(self):
        if self.relation not in (">", "<"):
            raise ValueError(f"unknown relation {self.relation!r}")

    def render(self) -> str:
        iv = self.interval
        ends = ("[" if iv.lo_closed else "(", "]" if iv.hi_closed else ")")
        lo, hi = E.render(_const_expr(iv.lo)), E.render(_const_expr(iv.hi))
        return f"prove {E.render(self.lhs)} {self.relation} {E.render(self.rhs)} on {ends[0]}{lo}, {hi}{ends[1]}"

    def to_json(self):
        return {"statement": self.render()}

    @classmethod
    def from_json(cls, data) -> Problem:
        return parse_problem(data["statement"]).problem


def _const_expr(value: PiRat) -> E.Expr:
    from ..symbolic.mltp import pirat_expr
    return pirat_expr(value)


# -- strategy scripts ---------------------------------------------------------------

@dataclass(frozen=True)
class Step:
    """One strategy step: kind in {auto, theorem, multiplier, split, reflect}."""
    kind: str
    level: int = 1
    expr: E.Expr = None
    point: PiRat = None
    children: tuple = field(default_factory=tuple)

    def render(self) -> str:
        if self.kind == "auto":
            return "auto"
        if self.kind == "theorem":
            return "theorem" if self.level == 1 else f"theorem({self.level})"
        if self.kind == "multiplier":
            return f"multiplier({E.render(self.expr)}) {self.children[0].render()}"
        if self.kind == "reflect":
            return f"reflect {self.children[0].render()}"
        left, right = self.children
        return f"split({E.render(_const_expr(self.point))}) [{left.render()}, {right.render()}]"


AUTO = Step("auto")


@dataclass(frozen=True)
class ProblemFile:
    problem: Problem
    strategy: Step = AUTO
    definitions: dict = field(default_factory=dict)

    def render(self) -> str:
        """Problem and strategy lines; definitions are already inlined."""
        lines = [self.problem.render()]
        if self.strategy != AUTO:
            lines.append(f"strategy {self.strategy.render()}")
        return "\n".join(lines) + "\n"


def _constant(e: E.Expr, pos: int) -> PiRat:
    if E.has_x(e):
        raise ParseError("a constant may not mention x", pos)
    value = to_pirat(E.to_const(e))
    if value is None:
        raise ParseError("constant must lie in Q(pi)", pos)
    return value


class _FileParser(Parser):
    def const(self) -> PiRat:
        pos = self.tok.pos
        return _constant(self.expr(), pos)

    def interval(self) -> Interval:
        if self.accept("("):
            lo_closed = False
        elif self.accept("["):
            lo_closed = True
        else:
            self.fail("expected an interval", "'(' or '['")
        lo = self.const()
        self.expect(",")
        hi = self.const()
        if self.accept(")"):
            hi_closed = False
        elif self.accept("]"):
            hi_closed = True
        else:
            self.fail("expected the end of the interval", "')' or ']'")
        return Interval(lo, hi, lo_closed, hi_closed)

    def problem(self) -> Problem:
        self.expect("prove")
        lhs = self.expr()
        if self.accept(">"):
            rel = ">"
        elif self.accept("<"):
            rel = "<"
        else:
            self.fail("expected a relation", "'<' or '>'")
        rhs = self.expr()
        self.expect("on")
        pos = self.tok.pos
        iv = self.interval()
        if (iv.lo.sign() == Sign.NEGATIVE or (HALF_PI - iv.hi).sign() == Sign.NEGATIVE
                or (iv.hi - iv.lo).sign() != Sign.POSITIVE):
            raise ParseError("interval must be nonempty and inside [0, pi/2]", pos)
        return Problem(lhs, rel, rhs, iv)

    def step(self) -> Step:
        t = self.tok
        if self.accept("auto"):
            return AUTO
        if self.accept("theorem"):
            level = 1
            if self.accept("("):
                level = self.integer()
                self.expect(")")
                if level < 1:
                    raise ParseError("level must be at least 1", t.pos)
            return Step("theorem", level=level)
        if self.accept("multiplier"):
            self.expect("(")
            e = self.expr()
            self.expect(")")
            return Step("multiplier", expr=e, children=(self.step(),))
        if self.accept("reflect"):
            return Step("reflect", children=(self.step(),))
        if self.accept("split"):
            self.expect("(")
            point = self.const()
            self.expect(")")
            self.expect("[")
            left = self.step()
            self.expect(",")
            right = self.step()
            self.expect("]")
            return Step("split", point=point, children=(left, right))
        self.fail("expected a strategy step", "auto, theorem, multiplier, split or reflect")


def _definition(line: str, definitions, offset: int):
    head, _, body = line.partition("=")
    p = _FileParser(head, definitions)
    name = p.tok
    if name.kind != "name" or name.text in RESERVED or name.text in definitions:
        raise ParseError(f"bad definition name '{name.text}'", offset + name.pos)
    p.i += 1
    param = p.accept("(")
    if param:
        p.expect("x")
        p.expect(")")
    p.expect_end()
    try:
        value = Parser(body, definitions).expr()
        tail = Parser(body, definitions)
        tail.expr()
        tail.expect_end()
    except ParseError as exc:
        raise ParseError(str(exc).split(" at offset")[0], offset + len(head) + 1 + exc.position) from exc
    if not param and E.has_x(value):
        raise ParseError("a constant definition may not mention x", offset + len(head) + 1)
    definitions[name.text] = Definition(param, value)


def parse_problem(text: str) -> ProblemFile:
    """Parse a problem file; ParseError positions are offsets into ``text``."""
    definitions = {}
    problem = None
    strategy = AUTO
    offset = 0
    for raw in text.splitlines(keepends=True):
        line = raw.split("#", 1)[0]
        stripped = line.strip()
        start = offset + (len(line) - len(line.lstrip()))
        offset += len(raw)
        if not stripped:
            continue
        word = stripped.split(None, 1)[0]
        if word == "prove":
            if problem is not None:
                raise ParseError("more than one prove line", start)
            problem = _run(stripped, definitions, start, lambda p: p.problem())
        elif word == "strategy":
            if problem is None:
                raise ParseError("strategy before the prove line", start)
            strategy = _run(stripped[len("strategy"):], definitions, start + len("strategy"),
                            lambda p: p.step())
        elif "=" in stripped:
            if problem is not None:
                raise ParseError("definitions must precede the prove line", start)
            _definition(stripped, definitions, start)
        else:
            raise ParseError("expected a definition, prove or strategy line", start)
    if problem is None:
        raise ParseError("no prove line", len(text))
    return ProblemFile(problem, strategy, definitions)


def _run(text, definitions, offset, rule):
    p = _FileParser(text, definitions)
    try:
        value = rule(p)
        p.expect_end()
    except ParseError as exc:
        raise ParseError(str(exc).split(" at offset")[0], offset + exc.position, exc.expected) from exc
    except (NotMLTP, ValueError, ZeroDivisionError) as exc:
        raise ParseError(str(exc), offset) from exc
    return value
