"""Bell inequalities in quantum phase space.

Wigner functions and Weyl symbols, the Moyal star product by three
independent routes, quantized characteristic functions of phase-space
regions, and the Bell bounds and violations they imply.
"""

from .bell import (BellResult, EigenvalueSeries, abs_wigner_integral, bell_state_value,
                   bell_value_disk, chsh_identity_check, chsh_random_suite, cirelson_ratio,
                   figure1_data, figure2_data, lambda_generating, lambda_quadrature,
                   lambda_recurrence, optimize_singlet_chsh)
from .errors import (ConfigurationError, DomainError, IntegrationError, NumericalError,
                     PhaseBellError, TruncationError)
from .moyal import (FockMatrix, dequantize, poisson_bracket, quantize, star_integral,
                    star_series, star_via_operators, symplectic_matrix)
from .phasespace import (HBAR, Annulus, Complement, Disk, HalfPlane, PhaseGrid,
                         PhasePoint, Predicate, WeylSymbol, WignerState, bell_symbol,
                         characteristic_symbol, expectation, wigner_fock)

__version__ = "0.1.0"

__all__ = [
    "Annulus", "BellResult", "Complement", "ConfigurationError", "Disk", "DomainError",
    "EigenvalueSeries", "FockMatrix", "HBAR", "HalfPlane", "IntegrationError",
    "NumericalError", "PhaseBellError", "PhaseGrid", "PhasePoint", "Predicate",
    "TruncationError", "WeylSymbol", "WignerState", "abs_wigner_integral",
    "bell_state_value", "bell_symbol", "bell_value_disk", "characteristic_symbol",
    "chsh_identity_check", "chsh_random_suite", "cirelson_ratio", "dequantize",
    "expectation", "figure1_data", "figure2_data", "lambda_generating",
    "lambda_quadrature", "lambda_recurrence", "optimize_singlet_chsh", "poisson_bracket",
    "quantize", "star_integral", "star_series", "star_via_operators", "symplectic_matrix",
    "wigner_fock",
]
