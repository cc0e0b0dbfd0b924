"""
wavelab - a numerical laboratory for the coupled semi-linear wave system
u_i,tt - c_i^2 Lap u_i = |u|^2 + f_i with small data eps F1.

Subpackages:
  domain      grids, sampled speeds, discrete norms, admissibility checks
  linear      leapfrog solvers for the diagonal linear system
  nonlinear   direct and Duhamel-Picard solves, lifespan estimates
  parametrix  the expansion eps w1 + eps^2 w2 and its remainder
  analysis    surface traces, linear-map recovery, energy bounds
  cli         experiment configs, runner and command line
"""

__version__ = "1.0.0"

from .exceptions import (
    BlowUpError,
    ConfigError,
    ConvergenceError,
    DivergenceError,
    StabilityError,
    WavelabError,
)

__all__ = [
    "__version__",
    "WavelabError",
    "ConfigError",
    "StabilityError",
    "DivergenceError",
    "BlowUpError",
    "ConvergenceError",
]
