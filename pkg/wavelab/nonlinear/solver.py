"""
Direct explicit solver for the coupled system.

The nonlinear term is evaluated at the current level, so the scheme reads
u_i^{n+1} = 2u_i^n - u_i^{n-1} + dt^2 (c_i^2 Lap_h u_i^n + |u^n|^2 + f_i^n).
"""

from typing import Optional

from ..domain.norms import s_norm
from ..linear.models import WaveField
from ..linear.solver import check_cfl, solve_system_linear, source_forcing
from ..linear.stepper import LeapfrogStepper
from ..logging_config import get_logger
from .models import NonlinearProblem, NormBoundReport

logger = get_logger(__name__)


def solve_coupled(problem: NonlinearProblem) -> WaveField:
    """Leapfrog trajectory of the coupled system; BlowUpError past 1e3 / eps."""
    grid = problem.grid
    check_cfl(grid, problem.sys.c_max)
    stepper = LeapfrogStepper(
        problem.sys.c2,
        grid,
        kind="coupled",
        source_term=problem.nonlinear_term,
        blowup_threshold=problem.blowup_threshold,
    )
    F = problem.F
    logger.debug(f"coupled solve eps={F.epsilon:g} coupling={problem.coupling:g}")
    return WaveField(stepper.run(F.displacement, F.velocity, source_forcing(F, grid)), grid)


def norm_bound_check(
    problem: NonlinearProblem, u: Optional[WaveField] = None, tol: float = 1e-12
) -> NormBoundReport:
    """||u||_S <= 2 ||u_lin||_S + tol, u_lin the linear solve with the same data."""
    if u is None:
        u = solve_coupled(problem)
    grid = problem.grid
    norm = s_norm(u.snapshots, grid)
    linear = s_norm(solve_system_linear(problem.sys, problem.F, grid).snapshots, grid)
    return NormBoundReport(norm <= 2.0 * linear + tol, norm, linear, tol)
