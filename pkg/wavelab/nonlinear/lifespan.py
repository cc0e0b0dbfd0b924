"""
Lifespan estimates for small data and the diameter condition on Omega.

The guaranteed existence time is the smaller of
  T_log    = (log(1/(3 eps)) - C_s') / C_s            (clamped at 0)
  T_energy = root of T * D1(T) = 1/(3 eps)            (when D1 is known)
"""

import math
from typing import Iterable

import numpy as np
import pandas as pd
from scipy.optimize import bisect

from ..domain.models import GridSpec
from ..exceptions import ConvergenceError
from ..linear.models import SpeedSystem
from ..logging_config import get_logger
from .models import DiameterReport, LifespanEstimate, LifespanModel

logger = get_logger(__name__)

XTOL = 1e-13
MAX_DOUBLINGS = 200
THRESHOLD_MARGIN = 1e-9


def _energy_route(model: LifespanModel, target: float) -> float:
    def excess(T):
        return T * model.energy_constant(T) - target

    hi = 1.0
    for _ in range(MAX_DOUBLINGS):
        if excess(hi) > 0:
            break
        hi *= 2.0
    else:
        return math.inf
    return float(bisect(excess, 0.0, hi, xtol=XTOL))


def lifespan_estimate(model: LifespanModel, epsilon: float) -> LifespanEstimate:
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")
    target = 1.0 / (3.0 * epsilon)
    T_log = max(0.0, (math.log(target) - model.C_s_prime) / model.C_s)
    T_energy = None
    T_max = T_log
    if model.D1 is not None:
        T_energy = _energy_route(model, target)
        T_max = min(T_log, T_energy)
    if T_max == 0.0:
        logger.warning(f"no guaranteed lifespan for eps={epsilon:g}")
    return LifespanEstimate(epsilon=epsilon, T_max=T_max, T_log=T_log, T_energy=T_energy)


def travel_diameter(grid: GridSpec, sys: SpeedSystem):
    """Euclidean diameter of Omega over the slowest nodal speed inside it."""
    euclidean = grid.inner_diameter()
    slowest = float(np.min(sys.slowest_speed()[grid.inner_mask]))
    return euclidean / slowest, euclidean, slowest


def diameter_condition(
    grid: GridSpec, sys: SpeedSystem, model: LifespanModel, epsilon: float
) -> DiameterReport:
    """diam(Omega), measured in travel time, must be below T_max(eps)."""
    diameter, euclidean, slowest = travel_diameter(grid, sys)
    T_max = lifespan_estimate(model, epsilon).T_max
    return DiameterReport(
        passed=diameter < T_max,
        epsilon=epsilon,
        diameter=diameter,
        euclidean_diameter=euclidean,
        slowest_speed=slowest,
        T_max=T_max,
    )


def threshold_epsilon(
    grid: GridSpec,
    sys: SpeedSystem,
    model: LifespanModel,
    eps_start: float = 1e-3,
    eps_floor: float = 1e-300,
) -> float:
    """
    Largest eps1 for which the diameter condition holds; every eps below it
    passes as well, since T_max decreases in eps.
    """
    diameter, _, _ = travel_diameter(grid, sys)

    def margin(log_eps):
        return lifespan_estimate(model, math.exp(log_eps)).T_max - diameter

    hi = math.log(1.0 - 1e-12)
    if margin(hi) > 0:
        return 1.0 - 1e-12
    lo = math.log(eps_start)
    while margin(lo) <= 0:
        lo -= math.log(10.0)
        if lo < math.log(eps_floor):
            raise ConvergenceError("diameter condition fails for every representable epsilon")
    root = bisect(margin, lo, hi, xtol=1e-12)
    eps1 = math.exp(root - THRESHOLD_MARGIN)
    logger.info(f"diameter condition threshold eps1={eps1:.6g} (diam={diameter:.4g})")
    return eps1


def lifespan_table(
    grid: GridSpec, sys: SpeedSystem, model: LifespanModel, epsilons: Iterable[float]
) -> pd.DataFrame:
    """Rows (epsilon, T_max, diam, pass) for a list of epsilons."""
    rows = []
    for eps in epsilons:
        report = diameter_condition(grid, sys, model, eps)
        rows.append(
            {
                "epsilon": eps,
                "T_max": report.T_max,
                "diam": report.diameter,
                "pass": bool(report.passed),
            }
        )
    return pd.DataFrame(rows, columns=["epsilon", "T_max", "diam", "pass"])
