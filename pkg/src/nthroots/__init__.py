"""Exact n-th roots of integer matrices and searches for unimodular matrices
whose inverses stay small and zerofree."""

__version__ = "0.1.0"

from .exact import (DimensionMismatch, MatrixParseError, Singular, concat_norm, det, integer_inverse,
                    inverse_exact, is_unimodular, is_zerofree, parse_matrix, profile)
from .cyclotomic import CycNumber, cyc_field, embed
from .roots import (C, RootSet, enumerate_roots, even_family, integer_spectrum, odd_c_roots,
                    real_roots, roots_of_power)
from .canon import Order, SignedPerm, canonicalize, equivalent, orbit, partition_classes
from .search import (NoSolutionWithinBound, ProblemSpec, SearchReport, exhaustive_problem_i,
                     exhaustive_problem_ii, random_unimodular, randomized_zerofree_search,
                     verify_catalog)

__all__ = [name for name in dir() if not name.startswith("_")]
