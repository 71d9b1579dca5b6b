"""Exact computations for quiver algebras: Koszul duals, bimodule
resolutions, Hochschild cohomology and graded centers."""

from .exact import Field, Scalar, SparseMatrix, kernel_basis, order_of, rank, solve
from .families import make_params

__all__ = ["Field", "Scalar", "SparseMatrix", "kernel_basis", "order_of", "rank", "solve", "make_params"]

__version__ = "0.1.0"
