"""Symbol calculus: asymptotic composition, adjoints, powers and their matrix oracles."""
from toruspdo.calculus.expansion import (
    MAX_ORDER,
    ExpansionResult,
    compose_grids,
    compose_asymptotic,
    adjoint_asymptotic,
    symbol_power,
)
from toruspdo.calculus.exact import assoc_of, compose_exact_matrix, symbol_from_matrix

__all__ = [
    "MAX_ORDER",
    "ExpansionResult",
    "compose_grids",
    "compose_asymptotic",
    "adjoint_asymptotic",
    "symbol_power",
    "assoc_of",
    "compose_exact_matrix",
    "symbol_from_matrix",
]
