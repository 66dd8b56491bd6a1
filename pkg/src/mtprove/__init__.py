"""Exact-arithmetic prover for mixed logarithmic-trigonometric polynomial inequalities."""

__version__ = "0.1.0"
