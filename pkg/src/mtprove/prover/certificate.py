"""Proof certificates: a tree of JSON-ready nodes plus the problem they prove.

Node kinds:

- ``DirectReduce`` / ``LogReduce``: the root, turning the problem into F > 0
- ``ExponentReduce``: replace one log multiplier, with side conditions
- ``IntervalSplit`` and ``Reflect``: restructure the interval
- ``TheoremTH``: limits at 0+, a derivative quotient and its sign proofs
- ``TrigMinorant``, ``PolySign``, ``ConstSign``, ``DomainSign``: sign leaves
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .problem import Problem

SCHEMA = "mtp-cert-1"


@dataclass(frozen=True)
class Node:
    kind: str
    data: dict = field(default_factory=dict)
    children: tuple = field(default_factory=tuple)

    def to_json(self):
        out = {"kind": self.kind}
        out.update(self.data)
        out["children"] = [c.to_json() for c in self.children]
        return out

    @classmethod
    def from_json(cls, data) -> Node:
        data = dict(data)
        kind = data.pop("kind")
        children = tuple(cls.from_json(c) for c in data.pop("children", []))
        return cls(kind, data, children)

    def walk(self, path=()):
        yield path, self
        for i, c in enumerate(self.children):
            yield from c.walk(path + (i,))

    def __eq__(self, other):
        return isinstance(other, Node) and self.to_json() == other.to_json()

    def __hash__(self):
        return hash(json.dumps(self.to_json(), sort_keys=True))


@dataclass(frozen=True, eq=False)
class Certificate:
    problem: Problem
    root: Node

    def to_json(self):
        return {"schema": SCHEMA, "problem": self.problem.to_json(), "root": self.root.to_json()}

    def dumps(self) -> str:
        return dumps(self.to_json())

    @classmethod
    def loads(cls, text: str) -> Certificate:
        return cls.from_json(json.loads(text))

    @classmethod
    def from_json(cls, data) -> Certificate:
        if data.get("schema") != SCHEMA:
            raise ValueError(f"unsupported certificate schema {data.get('schema')!r}")
        return cls(Problem.from_json(data["problem"]), Node.from_json(data["root"]))

    def __eq__(self, other):
        return isinstance(other, Certificate) and self.dumps() == other.dumps()

    def __hash__(self):
        return hash(self.dumps())


def dumps(data) -> str:
    return json.dumps(data, sort_keys=True, indent=1, ensure_ascii=True) + "\n"
