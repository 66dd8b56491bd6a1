"""Sign certification for polynomials in x with coefficients in Q(pi)."""

from .certificate import SignCertificate
from .tactics import (
    LADDER, certify_sign, quadratic_minimum, tactic_monomial_endpoint, tactic_pair_grouping,
    tactic_quadratic_vertex, tactic_sturm,
)

__all__ = [
    "LADDER", "SignCertificate", "certify_sign", "quadratic_minimum", "tactic_monomial_endpoint",
    "tactic_pair_grouping", "tactic_quadratic_vertex", "tactic_sturm",
]
