"""Exact fields and sparse linear algebra."""

from .fields import INFINITY, Field, Scalar, order_of
from .linalg import SparseMatrix, echelon, kernel_basis, rank, solve

__all__ = [
    "INFINITY",
    "Field",
    "Scalar",
    "order_of",
    "SparseMatrix",
    "echelon",
    "kernel_basis",
    "rank",
    "solve",
]
