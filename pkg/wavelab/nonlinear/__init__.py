"""
The coupled semi-linear system: direct leapfrog solve, Duhamel-Picard
iteration and small-data lifespan estimates.
"""

from .lifespan import (
    diameter_condition,
    lifespan_estimate,
    lifespan_table,
    threshold_epsilon,
    travel_diameter,
)
from .models import (
    DiameterReport,
    LifespanEstimate,
    LifespanModel,
    NonlinearProblem,
    NormBoundReport,
    PicardReport,
    abs_square,
    energy_constant,
)
from .picard import duhamel_picard
from .solver import norm_bound_check, solve_coupled

__all__ = [
    "NonlinearProblem",
    "LifespanModel",
    "LifespanEstimate",
    "DiameterReport",
    "PicardReport",
    "NormBoundReport",
    "abs_square",
    "energy_constant",
    "solve_coupled",
    "norm_bound_check",
    "duhamel_picard",
    "lifespan_estimate",
    "diameter_condition",
    "travel_diameter",
    "threshold_epsilon",
    "lifespan_table",
]
