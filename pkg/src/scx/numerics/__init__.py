"""Numeric kernels: symmetric eigensolver, exact rational linear algebra, exact LP."""

from .eigen import EigenError, eigenvalues_sym
from .lp import LpProblem, LpSolution, lp_solve, lp_solve_max
from .rational import RationalMatrix, rank_exact

__all__ = [
    "EigenError",
    "eigenvalues_sym",
    "LpProblem",
    "LpSolution",
    "lp_solve",
    "lp_solve_max",
    "RationalMatrix",
    "rank_exact",
]
