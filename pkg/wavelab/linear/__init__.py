"""
Explicit leapfrog solvers for the variable-speed wave equation and the
diagonal three-component system, with convergence studies.
"""

from .convergence import (
    ConvergenceProblem,
    ConvergenceResult,
    convergence_order,
    fit_loglog_slope,
    manufactured_problem,
    standing_wave_problem,
)
from .models import SourceData, SpeedSystem, WaveField
from .solver import (
    check_cfl,
    discrete_wave_operator,
    observe_system_linear,
    resume_leapfrog,
    solve_scalar_linear,
    solve_system_linear,
    solve_with_forcing,
)
from .sources import (
    RECIPES,
    gaussian_forcing,
    gaussian_pulse_source,
    standing_mode_source,
    zero_source,
)
from .stepper import LeapfrogStepper, laplacian

__all__ = [
    "SourceData",
    "SpeedSystem",
    "WaveField",
    "LeapfrogStepper",
    "laplacian",
    "check_cfl",
    "solve_scalar_linear",
    "solve_system_linear",
    "solve_with_forcing",
    "observe_system_linear",
    "resume_leapfrog",
    "discrete_wave_operator",
    "standing_mode_source",
    "gaussian_pulse_source",
    "gaussian_forcing",
    "zero_source",
    "RECIPES",
    "ConvergenceProblem",
    "ConvergenceResult",
    "convergence_order",
    "fit_loglog_slope",
    "standing_wave_problem",
    "manufactured_problem",
]
