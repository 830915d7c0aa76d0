"""Toroidal symbols: sampling, Fourier tables, discrete calculus, seminorms and spec files."""
from toruspdo.symbol.symbol import (
    Symbol,
    SymbolKind,
    ToroidalGrid,
    FourierTable,
    bracket,
    sample_symbol,
    fourier_table,
    grid_from_table,
    sup_abs_per_k,
)
from toruspdo.symbol.difference import (
    DERIVATIVE_CONVENTIONS,
    delta_k,
    d_x,
    x_derivative,
    mode_factors,
    inverse_factorial,
    newton_parts,
)
from toruspdo.symbol.hormander import HormanderReport, hormander_estimate
from toruspdo.symbol.expression import (
    parse_expression,
    compile_closed_form,
    compile_multiplier,
    compile_function,
    depends_on_x,
)
from toruspdo.symbol.catalog import (
    CATALOG,
    indicator_symbol,
    rademacher,
    rademacher_symbol,
    rademacher_coefficients,
    rademacher_bound_sums,
    product_symbol,
    sum_symbol,
)
from toruspdo.symbol.symbol_file import (
    load_symbol_file,
    symbol_from_spec,
    read_grid_csv,
    grid_frame,
    write_grid_csv,
)

__all__ = [
    "Symbol",
    "SymbolKind",
    "ToroidalGrid",
    "FourierTable",
    "bracket",
    "sample_symbol",
    "fourier_table",
    "grid_from_table",
    "sup_abs_per_k",
    "DERIVATIVE_CONVENTIONS",
    "delta_k",
    "d_x",
    "x_derivative",
    "mode_factors",
    "inverse_factorial",
    "newton_parts",
    "HormanderReport",
    "hormander_estimate",
    "parse_expression",
    "compile_closed_form",
    "compile_multiplier",
    "compile_function",
    "depends_on_x",
    "CATALOG",
    "indicator_symbol",
    "rademacher",
    "rademacher_symbol",
    "rademacher_coefficients",
    "rademacher_bound_sums",
    "product_symbol",
    "sum_symbol",
    "load_symbol_file",
    "symbol_from_spec",
    "read_grid_csv",
    "grid_frame",
    "write_grid_csv",
]
