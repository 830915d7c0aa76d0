"""Applying T_sigma to sampled periodic functions."""
from toruspdo.operator.apply import (
    PeriodicFunction,
    forward_coeffs,
    function_frame,
    apply_operator,
    matrix_consistency_residual,
    read_function_csv,
    write_function_csv,
)

__all__ = [
    "PeriodicFunction",
    "forward_coeffs",
    "function_frame",
    "apply_operator",
    "matrix_consistency_residual",
    "read_function_csv",
    "write_function_csv",
]
