"""Log jet and evaluation spaces of chart-presented affine log schemes.

Exact arithmetic throughout (rationals and prime fields).  See the README for
the command line and the input format.
"""

__version__ = "0.1.0"

from .algebra import QQ, Field, Poly, TruncSeries, parse_poly, parse_series  # noqa: E402
from .logscheme import (JetPoint, LogArc, LogChartScheme, PrecisionError, ValidationError,  # noqa: E402
                        validate_arc, validate_scheme)
from .monoid import MonoidHom, MonoidPresentation  # noqa: E402

__all__ = [
    "QQ", "Field", "Poly", "TruncSeries", "parse_poly", "parse_series",
    "JetPoint", "LogArc", "LogChartScheme", "PrecisionError", "ValidationError",
    "validate_arc", "validate_scheme", "MonoidHom", "MonoidPresentation",
]
