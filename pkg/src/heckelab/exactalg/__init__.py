"""Exact rational, polynomial and Laurent-matrix arithmetic."""

from .lmat import NotInvertible, is_unimodular_poly, is_unimodular_w, ldet, linverse, monomial_det
from .matrix import (
    Mat,
    block_diag,
    diag,
    eval_at,
    identity,
    inverse,
    laurent_identity,
    nullspace,
    poly_identity,
    rank,
    rational_matrix,
    rref,
    to_laurent,
    to_poly,
)
from .poly import INF, EvalAtPole, Laurent, Poly, as_fraction, linear, poly_gcd, zpow
from .smith import SmithResult, kernel_basis, left_inverse, saturated_column_basis, smith_decomposition, smith_form
from .textfmt import format_laurent, format_matrix, parse_laurent, parse_matrix

__all__ = [
    "INF",
    "EvalAtPole",
    "Laurent",
    "Mat",
    "NotInvertible",
    "Poly",
    "SmithResult",
    "as_fraction",
    "block_diag",
    "diag",
    "eval_at",
    "format_laurent",
    "format_matrix",
    "identity",
    "inverse",
    "is_unimodular_poly",
    "is_unimodular_w",
    "kernel_basis",
    "laurent_identity",
    "ldet",
    "left_inverse",
    "linear",
    "linverse",
    "monomial_det",
    "nullspace",
    "parse_laurent",
    "parse_matrix",
    "poly_gcd",
    "poly_identity",
    "rank",
    "rational_matrix",
    "rref",
    "saturated_column_basis",
    "smith_decomposition",
    "smith_form",
    "to_laurent",
    "to_poly",
    "zpow",
]
