"""Exact decomposition of trace-zero matrices as commutators of two matrices
taken from a prescribed hyperplane of the matrix space."""

from .exact_matrix import Mat, Poly, commutator
from .field import Field, Scalar, make_field
from .hyperplane import Hyperplane, make_hyperplane
from .solver import Decomposition, SolveOutcome, decompose, thompson_decompose

__version__ = "0.1.0"
