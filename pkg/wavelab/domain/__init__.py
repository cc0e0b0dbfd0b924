"""
Grids, sampled sound speeds, discrete Sobolev norms and admissibility checks.
"""

from .grid import make_grid, with_final_time, with_speed_limit
from .models import (
    GridSpec,
    HerglotzReport,
    ScalarFieldSnapshot,
    SobolevOrder,
    SpeedField,
    SpeedValidationReport,
)
from .norms import c_l2_norm, l2_norm, l2_time_norm, s_norm, sobolev_norm
from .speeds import (
    constant_speed,
    example_family_check,
    herglotz_bump_speed,
    herglotz_check,
    radial_decay_check,
    radial_decay_speed,
    sample_profile,
    speed_from_values,
    validate_speed,
)

__all__ = [
    "GridSpec",
    "SpeedField",
    "ScalarFieldSnapshot",
    "SobolevOrder",
    "SpeedValidationReport",
    "HerglotzReport",
    "make_grid",
    "with_speed_limit",
    "with_final_time",
    "sobolev_norm",
    "l2_norm",
    "c_l2_norm",
    "l2_time_norm",
    "s_norm",
    "validate_speed",
    "herglotz_check",
    "example_family_check",
    "radial_decay_check",
    "sample_profile",
    "constant_speed",
    "radial_decay_speed",
    "herglotz_bump_speed",
    "speed_from_values",
]
