"""
Duhamel-Picard iteration for the coupled system.

W^0 solves the linear system with data F; W^n solves it with the forcing
f + N(W^{n-1}, W^{n-1}). Every iterate uses the same leapfrog scheme, so the
fixed point is the trajectory of the direct solver.
"""

from typing import Optional, Tuple

import numpy as np

from ..domain.norms import s_norm
from ..linear.models import WaveField
from ..linear.solver import solve_system_linear, solve_with_forcing
from ..logging_config import get_logger
from ..metrics import record_picard_iteration
from .lifespan import lifespan_estimate
from .models import LifespanModel, NonlinearProblem, PicardReport

logger = get_logger(__name__)

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 50


def _contraction_ratio(linear_norm: float, residuals) -> float:
    """Geometric mean of successive ratios, starting from ||W^0||."""
    if linear_norm <= 0 or not residuals:
        return 0.0
    last = residuals[-1]
    if last <= 0:
        return 0.0
    return float((last / linear_norm) ** (1.0 / len(residuals)))


def duhamel_picard(
    problem: NonlinearProblem,
    max_iter: int = DEFAULT_MAX_ITER,
    tol: float = DEFAULT_TOL,
    lifespan_model: Optional[LifespanModel] = None,
) -> Tuple[WaveField, PicardReport]:
    """
    Iterate until ||W^n - W^{n-1}||_S < tol or max_iter iterations.

    Non-convergence is reported, not raised. A final time beyond the
    estimated lifespan only logs a warning.
    """
    grid = problem.grid
    if lifespan_model is None:
        logger.warning("no lifespan model supplied; the lifespan condition is not checked")
    else:
        estimate = lifespan_estimate(lifespan_model, problem.epsilon)
        if not grid.T < estimate.T_max:
            logger.warning(
                f"T={grid.T:g} is outside the estimated lifespan {estimate.T_max:.4g} "
                f"for eps={problem.epsilon:g}"
            )

    F = problem.F
    base_forcing = problem.epsilon * F.sampled_forcing(grid)
    W = solve_system_linear(problem.sys, F, grid)
    linear_norm = s_norm(W.snapshots, grid)

    residuals = []
    converged = False
    for iteration in range(1, max_iter + 1):
        forcing = base_forcing + np.stack([problem.nonlinear_term(level) for level in W.snapshots])
        W_next = solve_with_forcing(
            problem.sys, F.displacement, F.velocity, forcing, grid, kind="picard"
        )
        residual = s_norm(W_next.snapshots - W.snapshots, grid)
        residuals.append(residual)
        record_picard_iteration(residual)
        logger.debug(f"picard iteration {iteration}: residual {residual:.3e}")
        W = W_next
        if residual < tol:
            converged = True
            break

    report = PicardReport(
        iterates=len(residuals),
        residuals=tuple(residuals),
        converged=converged,
        contraction_ratio=_contraction_ratio(linear_norm, residuals),
        linear_norm=linear_norm,
    )
    if not converged:
        logger.warning(f"picard iteration did not converge in {max_iter} iterations")
    return W, report
