"""Admissible pairs for nilpotent elements of classical Lie algebras, in exact arithmetic."""

from __future__ import annotations

from .admissible import (AdmissiblePair, CheckReport, check_pair, construct_pair, optimal_pair,
                         slice_complement)
from .connectivity import connect_to_dynkin, p_index, verify_connectivity
from .equivalence import (b_optimal_chain, comparable, exceptional_rank1_table, rank_classifier,
                          two_level_chain, verify_chain)
from .exactlin import QMatrix, Subspace
from .grading import (Grading, is_admissible_grading, is_b_optimal, is_good_grading)
from .liealg import (AlgebraKind, build_algebra, dynkin_diagonal, nilpotent_from_partition)
from .sl2 import adapted_triple, decompose

__version__ = "0.1.0"

__all__ = [
    "AdmissiblePair", "CheckReport", "check_pair", "construct_pair", "optimal_pair",
    "slice_complement", "connect_to_dynkin", "p_index", "verify_connectivity", "b_optimal_chain",
    "comparable", "exceptional_rank1_table", "rank_classifier", "two_level_chain", "verify_chain",
    "QMatrix", "Subspace", "Grading", "is_admissible_grading", "is_b_optimal", "is_good_grading",
    "AlgebraKind", "build_algebra", "dynkin_diagonal", "nilpotent_from_partition",
    "adapted_triple", "decompose",
]
