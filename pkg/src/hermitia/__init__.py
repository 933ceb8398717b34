"""Hermitian codes over GF(q**2): code parameters, Groebner machinery,
minimum-weight codeword counting and independent brute-force oracles."""

from .gf import build_field, field_for_q, enumerate_elements, trace, norm
from .hermitian import build_curve, code_parameters, decompose_m
from .mwcount import count_min_weight, line_union_codeword
from .oracle import OracleBudget, assignment_count, exhaustive_min_weight

__all__ = [
    "build_field",
    "field_for_q",
    "enumerate_elements",
    "trace",
    "norm",
    "build_curve",
    "code_parameters",
    "decompose_m",
    "count_min_weight",
    "line_union_codeword",
    "OracleBudget",
    "assignment_count",
    "exhaustive_min_weight",
]

__version__ = "0.1.0"
