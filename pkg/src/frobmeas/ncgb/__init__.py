"""Noncommutative Groebner bases over exact fields."""

from .groebner import (
    DEFAULT_DEGREE,
    HARD_CAP,
    Finite,
    GBState,
    GBStats,
    GBStatus,
    Presentation,
    QuotientBasis,
    Trivial,
    UndeterminedAtDegree,
    complete,
    count_normal_words,
    has_infinitely_many_normal_words,
    multiplication_table,
    normal_form,
    quotient_basis,
    quotient_dimension,
)
from .poly import NCPoly, deglex_key

__all__ = [
    "DEFAULT_DEGREE", "HARD_CAP", "Finite", "GBState", "GBStats", "GBStatus", "NCPoly",
    "Presentation", "QuotientBasis", "Trivial", "UndeterminedAtDegree", "complete",
    "count_normal_words", "deglex_key", "has_infinitely_many_normal_words", "multiplication_table", "normal_form",
    "quotient_basis", "quotient_dimension",
]
