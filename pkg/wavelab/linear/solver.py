"""
Linear wave solvers: one variable-speed equation and the diagonal system,
both with homogeneous Dirichlet data on the boundary of Omega'.
"""

from typing import Optional

import numpy as np

from ..domain.models import GridSpec, SpeedField
from ..exceptions import ShapeMismatchError, StabilityError
from ..logging_config import get_logger
from .models import Forcing, SourceData, SpeedSystem, WaveField, clamp_boundary, sample_forcing
from .stepper import ForcingFn, LeapfrogStepper, Observer, laplacian, no_forcing

logger = get_logger(__name__)

CFL_LIMIT = 1.0


def check_cfl(grid: GridSpec, c_max: float) -> float:
    """Courant number of ``grid`` for speed ``c_max``; raises StabilityError above 1."""
    courant = grid.courant(c_max)
    if courant > CFL_LIMIT * (1.0 + 1e-12):
        raise StabilityError(courant, CFL_LIMIT)
    return courant


def source_forcing(F: SourceData, grid: GridSpec) -> ForcingFn:
    if F.f is None:
        return no_forcing
    return lambda n: F.forcing_level(n, grid)


def solve_scalar_linear(
    c: SpeedField,
    b0: np.ndarray,
    b1: np.ndarray,
    f: Forcing,
    grid: GridSpec,
) -> WaveField:
    """
    Leapfrog solve of u_tt - c^2 Lap u = f with u = b0, u_t = b1 at t = 0.

    ``f`` may be None, an array over the time levels or a closure
    f(t, coordinates). The result is a one-component WaveField.
    """
    if c.values.shape != grid.shape:
        raise ShapeMismatchError(f"speed {c.values.shape} does not match grid {grid.shape}")
    check_cfl(grid, float(np.sqrt(np.max(c.values))))

    b0 = clamp_boundary(np.reshape(b0, (1,) + grid.shape), grid, "b0")
    b1 = clamp_boundary(np.reshape(b1, (1,) + grid.shape), grid, "b1")
    forcing = no_forcing
    if f is not None:
        if callable(f):
            scalar = f
            f = lambda t, x: np.asarray(scalar(t, x))[None]  # noqa: E731
        else:
            f = np.asarray(f, dtype=np.float64)[:, None]
        sampled = clamp_boundary(sample_forcing(f, grid, ncomp=1), grid, "forcing")
        forcing = lambda n: sampled[n]  # noqa: E731

    stepper = LeapfrogStepper(c.values[None], grid, kind="scalar")
    return WaveField(stepper.run(b0, b1, forcing), grid)


def solve_system_linear(sys: SpeedSystem, F: SourceData, grid: GridSpec) -> WaveField:
    """Componentwise solve of the diagonal system with data epsilon * F1."""
    if sys.grid.shape != grid.shape:
        raise ShapeMismatchError(f"speed system {sys.grid.shape} does not match grid {grid.shape}")
    check_cfl(grid, sys.c_max)
    stepper = LeapfrogStepper(sys.c2, grid, kind="linear")
    logger.debug(f"linear system solve, eps={F.epsilon:g}, {grid.n_steps} steps")
    return WaveField(stepper.run(F.displacement, F.velocity, source_forcing(F, grid)), grid)


def observe_system_linear(
    sys: SpeedSystem, F: SourceData, grid: GridSpec, observer: Observer
) -> np.ndarray:
    """Same solve as solve_system_linear without storing the trajectory; returns the last level."""
    check_cfl(grid, sys.c_max)
    stepper = LeapfrogStepper(sys.c2, grid, kind="linear")
    return stepper.run(
        F.displacement, F.velocity, source_forcing(F, grid), observer=observer, store=False
    )


def solve_with_forcing(
    sys: SpeedSystem,
    b0: np.ndarray,
    b1: np.ndarray,
    forcing: np.ndarray,
    grid: GridSpec,
    kind: str = "linear",
) -> WaveField:
    """Linear system solve with explicit (already scaled) data and a sampled forcing array."""
    check_cfl(grid, sys.c_max)
    forcing = clamp_boundary(forcing, grid, "forcing")
    stepper = LeapfrogStepper(sys.c2, grid, kind=kind)
    return WaveField(stepper.run(b0, b1, lambda n: forcing[n]), grid)


def resume_leapfrog(
    c2: np.ndarray,
    u_prev: np.ndarray,
    u_curr: np.ndarray,
    grid: GridSpec,
    n_steps: int,
    forcing: Optional[ForcingFn] = None,
) -> np.ndarray:
    """
    Step on from the pair (u_prev, u_curr). Passing the last two levels of a
    run in swapped order integrates backwards in time.
    """
    c2 = np.asarray(c2, dtype=np.float64)
    check_cfl(grid, float(np.sqrt(np.max(c2))))
    stepper = LeapfrogStepper(c2, grid, kind="resume")
    return stepper.resume(np.asarray(u_prev), np.asarray(u_curr), n_steps, forcing or no_forcing)


def discrete_wave_operator(u, c2: np.ndarray, grid: GridSpec) -> np.ndarray:
    """
    (u^{n+1} - 2u^n + u^{n-1}) / dt^2 - c^2 Lap_h u^n on the interior levels
    1..N-1 of a stored trajectory.
    """
    snaps = u.snapshots if isinstance(u, WaveField) else np.asarray(u, dtype=np.float64)
    dt2 = grid.dt * grid.dt
    second = (snaps[2:] - 2.0 * snaps[1:-1] + snaps[:-2]) / dt2
    return second - np.asarray(c2) * laplacian(snaps[1:-1], grid.h, grid.dim)
