"""
Grid-refinement studies against closed-form solutions.

The error of one run is the max over time levels of the L^2 error over Omega';
the order is the least-squares slope of log(error) against log(h).
"""

import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from ..domain.grid import make_grid
from ..domain.models import GridSpec
from ..domain.norms import sobolev_sq
from ..domain.speeds import constant_speed, herglotz_bump_speed
from ..exceptions import ConvergenceError
from ..logging_config import get_logger
from ..parallel import run_ensemble
from .models import NCOMP, SourceData, SpeedSystem
from .solver import observe_system_linear
from .sources import standing_profile

logger = get_logger(__name__)

DEFAULT_H_LIST = (1.0 / 64, 1.0 / 128, 1.0 / 256)

Setup = Callable[[float], Tuple[SpeedSystem, SourceData, GridSpec]]


@dataclass(frozen=True)
class ConvergenceProblem:
    """A problem family indexed by h; ``exact(grid, t)`` is the solution at time t."""

    name: str
    setup: Setup
    exact: Callable[[GridSpec, float], np.ndarray]


@dataclass(frozen=True)
class ConvergenceResult:
    name: str
    h: Tuple[float, ...]
    errors: Tuple[float, ...]
    order: Optional[float]
    exact: bool = False

    def to_dict(self):
        return {
            "name": self.name,
            "h": list(self.h),
            "errors": list(self.errors),
            "order": self.order,
            "exact": self.exact,
        }


def fit_loglog_slope(x: Sequence[float], y: Sequence[float]) -> float:
    """Least-squares slope of log(y) against log(x)."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.size < 2 or x.size != y.size:
        raise ConvergenceError(f"need at least two matching samples, got {x.size} and {y.size}")
    if np.any(x <= 0) or np.any(y <= 0):
        raise ConvergenceError("log-log fit needs strictly positive samples")
    slope, _ = np.polyfit(np.log(x), np.log(y), 1)
    return float(slope)


def standing_wave_problem(T: float = 0.5, stability_factor: float = 0.9) -> ConvergenceProblem:
    """u = sin(pi x) cos(pi t) on [0, 1] with c = 1 in every component."""

    def setup(h):
        grid = make_grid(1, (0.0, 1.0), (0.25, 0.75), h, T, stability_factor)
        sys = SpeedSystem.uniform(constant_speed(grid), grid)
        b0 = np.broadcast_to(standing_profile(grid), (NCOMP,) + grid.shape)
        return sys, SourceData.create(b0, np.zeros_like(b0), None, grid), grid

    def exact(grid, t):
        return math.cos(math.pi * t) * standing_profile(grid)

    return ConvergenceProblem("standing-wave", setup, exact)


def manufactured_problem(
    T: float = 0.5, amplitude: float = 0.1, stability_factor: float = 0.9
) -> ConvergenceProblem:
    """
    u* = sin(pi x) sin(pi y) t^2 on the unit square under a bump speed, with
    f = u*_tt - c^2 Lap u* = (2 + 2 pi^2 c^2 t^2) sin(pi x) sin(pi y).
    """
    c_max = math.sqrt(1.0 + max(amplitude, 0.0))

    def setup(h):
        grid = make_grid(2, (0.0, 1.0), (0.25, 0.75), h, T, stability_factor, c_max)
        speed = herglotz_bump_speed(grid, amplitude=amplitude, radius=0.25)
        sys = SpeedSystem.uniform(speed, grid)
        profile = standing_profile(grid)
        c2 = speed.values

        def f(t, coords):
            return (2.0 + 2.0 * math.pi**2 * c2 * t * t) * profile

        zeros = np.zeros((NCOMP,) + grid.shape)
        return sys, SourceData.create(zeros, zeros, f, grid), grid

    def exact(grid, t):
        return t * t * standing_profile(grid)

    return ConvergenceProblem("manufactured", setup, exact)


def run_error(problem: ConvergenceProblem, h: float) -> float:
    """max over levels of the L^2 error, accumulated while stepping."""
    sys, F, grid = problem.setup(h)
    worst = [0.0]

    def observe(n, u):
        err = u - problem.exact(grid, float(grid.times[n]))
        worst[0] = max(worst[0], float(np.sum(sobolev_sq(err, grid, 0))))

    observe_system_linear(sys, F, grid, observe)
    return float(np.sqrt(worst[0]))


def convergence_order(
    problem: ConvergenceProblem,
    h_list: Sequence[float] = DEFAULT_H_LIST,
    threads: Optional[int] = None,
) -> ConvergenceResult:
    """Errors on every resolution and the fitted order (None with exact=True if all vanish)."""
    h_list = [float(h) for h in h_list]
    if len(h_list) < 3:
        raise ConvergenceError(f"convergence study needs at least 3 resolutions, got {len(h_list)}")

    errors: List[float] = run_ensemble(lambda h: run_error(problem, h), h_list, threads)
    logger.info(f"{problem.name}: errors {['%.3e' % e for e in errors]}")

    if all(e == 0.0 for e in errors):
        return ConvergenceResult(problem.name, tuple(h_list), tuple(errors), None, exact=True)
    if any(e == 0.0 for e in errors):
        raise ConvergenceError(f"{problem.name}: some but not all errors vanish, no slope defined")
    order = fit_loglog_slope(h_list, errors)
    return ConvergenceResult(problem.name, tuple(h_list), tuple(errors), order)
