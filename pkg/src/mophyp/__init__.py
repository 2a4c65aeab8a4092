"""Multiple orthogonal polynomials for a Gauss-hypergeometric weight pair."""

__version__ = "0.1.0"

from .weights import ParameterError, Params, validate_params  # noqa: E402
from .typeii import typeii_coeffs, recurrence_coeffs, zeros  # noqa: E402
from .typei import typei_pair  # noqa: E402

__all__ = [
    "__version__",
    "ParameterError",
    "Params",
    "validate_params",
    "typeii_coeffs",
    "recurrence_coeffs",
    "zeros",
    "typei_pair",
]
