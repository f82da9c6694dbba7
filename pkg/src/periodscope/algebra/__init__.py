"""Exact arithmetic: rationals, polynomials, rational functions, linear algebra."""

from fractions import Fraction as BigRational

from .interpolate import rational_reconstruct
from .linalg import FieldMatrix, rank, solve_linear, solve_sparse
from .multipoly import MultiPoly, monomial_basis
from .poly import UniPoly, content_and_primitive, poly_gcd, squarefree_decomposition
from .ratfun import RationalFunction
from .serialize import (
    poly_from_json,
    poly_to_json,
    rational_from_str,
    rational_to_str,
    ratfun_from_json,
    ratfun_to_json,
)

__all__ = [
    "BigRational",
    "FieldMatrix",
    "MultiPoly",
    "RationalFunction",
    "UniPoly",
    "content_and_primitive",
    "monomial_basis",
    "poly_from_json",
    "poly_gcd",
    "poly_to_json",
    "rank",
    "rational_from_str",
    "rational_reconstruct",
    "rational_to_str",
    "ratfun_from_json",
    "ratfun_to_json",
    "solve_linear",
    "solve_sparse",
    "squarefree_decomposition",
]
