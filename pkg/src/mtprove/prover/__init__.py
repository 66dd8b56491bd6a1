"""Problem reduction, proof search, certificates and the independent checker."""

from .casestudy import Intermediates, load_problem, nishizawa_case_study
from .certificate import SCHEMA, Certificate, Node
from .checker import Verdict, check
from .engine import Config, prove
from .problem import AUTO, Problem, ProblemFile, Step, parse_problem

__all__ = [
    "AUTO", "SCHEMA", "Certificate", "Config", "Intermediates", "Node", "Problem", "ProblemFile", "Step",
    "Verdict", "check", "load_problem", "nishizawa_case_study", "parse_problem", "prove",
]
