"""
Алгебры истинностных значений.
"""
from algebra.algebras import (
    ALGEBRA_TOKENS,
    CONNECTIVE_ARITY,
    ONE,
    ZERO,
    Algebra,
    AlgebraError,
    Connective,
    Family,
    TruthValue,
    apply,
    enumerate_carrier,
    inf_fin,
    parse_algebra,
    sup_fin,
)

__all__ = [
    "ALGEBRA_TOKENS",
    "CONNECTIVE_ARITY",
    "ONE",
    "ZERO",
    "Algebra",
    "AlgebraError",
    "Connective",
    "Family",
    "TruthValue",
    "apply",
    "enumerate_carrier",
    "inf_fin",
    "parse_algebra",
    "sup_fin",
]
