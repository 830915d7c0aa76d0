"""Associated matrices: truncation, adjoint, products, Gram blocks and dumps."""
from toruspdo.matrix.assoc import (
    AssocMatrix,
    CoeffVector,
    effective_band,
    build_assoc_matrix,
    adjoint,
    matmul,
    apply,
    gram_block,
)
from toruspdo.matrix.dump import save_matrix, load_matrix, matrix_frame

__all__ = [
    "AssocMatrix",
    "CoeffVector",
    "effective_band",
    "build_assoc_matrix",
    "adjoint",
    "matmul",
    "apply",
    "gram_block",
    "save_matrix",
    "load_matrix",
    "matrix_frame",
]
