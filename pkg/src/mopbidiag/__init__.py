"""Exact bidiagonal factorization of banded recursion matrices for mixed multiple orthogonal polynomials."""
from .bidiag import (BidiagonalChain, PerturbedSingular, TauZero, bidiag_from_tau,
                     bidiag_from_triangular, christoffel_chain, tau_tables)
from .exact import RMatrix, SingularLeadingMinor, gauss_borel
from .measures import DiscreteMeasureMatrix, moment_matrix
from .mop import build_families, recursion_matrices

__version__ = "0.1.0"
__all__ = ["BidiagonalChain", "DiscreteMeasureMatrix", "PerturbedSingular", "RMatrix",
           "SingularLeadingMinor", "TauZero", "bidiag_from_tau", "bidiag_from_triangular",
           "build_families", "christoffel_chain", "gauss_borel", "moment_matrix",
           "recursion_matrices", "tau_tables"]
