"""
Small-data expansion w = eps w1 + eps^2 w2 and its O(eps^3) remainder.
"""

from .expansion import (
    build_parametrix,
    defect_norm,
    defect_residual,
    parametrix_error,
    parametrix_sweep,
    parametrix_terms,
)
from .models import ErrorRecord, ParametrixBundle, ParametrixSweep

__all__ = [
    "ParametrixBundle",
    "ErrorRecord",
    "ParametrixSweep",
    "parametrix_terms",
    "build_parametrix",
    "parametrix_error",
    "parametrix_sweep",
    "defect_residual",
    "defect_norm",
]
