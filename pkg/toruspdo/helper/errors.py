"""
Error hierarchy shared by every module.

Each error carries a module-qualified code ("symbol_core.NonFiniteSample")
that the CLI prints verbatim.
"""


class TorusPdoError(Exception):
    """Base class for all toolkit errors."""

    module = "toruspdo"

    @property
    def code(self) -> str:
        return f"{self.module}.{type(self).__name__}"


# =============================================================================
# symbol_core
# =============================================================================

class NonFiniteSample(TorusPdoError, ArithmeticError):
    module = "symbol_core"


class WindowTooLarge(TorusPdoError, ValueError):
    module = "symbol_core"


class WindowExhausted(TorusPdoError, ValueError):
    module = "symbol_core"


class ParseError(TorusPdoError, ValueError):
    module = "symbol_core"


# =============================================================================
# assoc_matrix
# =============================================================================

class WindowTooSmall(TorusPdoError, ValueError):
    module = "assoc_matrix"


class WindowMismatch(TorusPdoError, ValueError):
    module = "assoc_matrix"


# =============================================================================
# spectral
# =============================================================================

class TrustedRegionEmpty(TorusPdoError, ValueError):
    module = "spectral"


class InsufficientDecay(TorusPdoError, ArithmeticError):
    module = "spectral"


class NonHermitianBlock(TorusPdoError, ArithmeticError):
    module = "spectral"


class ConvergenceFailure(TorusPdoError, ArithmeticError):
    module = "spectral"


class DenseLimitExceeded(TorusPdoError, ValueError):
    module = "spectral"


class MikhlinFailed(TorusPdoError, ValueError):
    module = "spectral"


# =============================================================================
# calculus / cli
# =============================================================================

class ExpansionOrderError(TorusPdoError, ValueError):
    module = "calculus"


class ConfigError(TorusPdoError, ValueError):
    module = "cli"
