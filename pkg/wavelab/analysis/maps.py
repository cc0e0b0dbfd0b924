"""
Source-to-solution maps on the measurement surface and recovery of the
linear map from nonlinear measurements.

L(eps) = Lambda(eps F1) / eps equals Lambda_lin F1 + O(eps); the estimate
2 L(eps) - L(2 eps) cancels the first-order term.
"""

from typing import Dict, Optional, Sequence, Tuple, Union

import numpy as np

from ..domain.models import GridSpec
from ..exceptions import ConvergenceError, DivergenceError
from ..linear.convergence import fit_loglog_slope
from ..linear.models import SourceData, SpeedSystem
from ..linear.solver import solve_system_linear
from ..logging_config import get_logger
from ..nonlinear.models import NonlinearProblem
from ..nonlinear.solver import solve_coupled
from ..parallel import run_ensemble
from .models import BoundaryTrace, RecoveryReport
from .trace import trace, trace_norm

logger = get_logger(__name__)


def lambda_map(
    sys: SpeedSystem, F: SourceData, grid: GridSpec, coupling: float = 1.0
) -> BoundaryTrace:
    """Trace of the coupled solution with data F (already carrying its eps)."""
    return trace(solve_coupled(NonlinearProblem(sys, F, grid, coupling=coupling)), grid)


def lambda_lin_map(sys: SpeedSystem, F1: SourceData, grid: GridSpec) -> BoundaryTrace:
    """Trace of the linear system solution with data F1."""
    return trace(solve_system_linear(sys, F1.with_epsilon(1.0), grid), grid)


def _scaled_measurement(
    sys: SpeedSystem, F1: SourceData, grid: GridSpec, coupling: float
):
    def measure(eps: float) -> Union[BoundaryTrace, DivergenceError]:
        try:
            return lambda_map(sys, F1.with_epsilon(eps), grid, coupling).scaled(1.0 / eps)
        except DivergenceError as exc:
            logger.warning(f"measurement at eps={eps:g} failed: {exc}")
            return exc

    return measure


def recover_linear_map(
    sys: SpeedSystem,
    F1: SourceData,
    epsilons: Sequence[float],
    grid: GridSpec,
    coupling: float = 1.0,
    reference: Optional[BoundaryTrace] = None,
    threads: Optional[int] = None,
) -> Tuple[Optional[BoundaryTrace], RecoveryReport]:
    """
    Extrapolated estimate of Lambda_lin F1 from L(eps) over ``epsilons``.

    The smallest eps is paired with 2 eps (reused from the list when present).
    ``reference`` defaults to the direct linear solve and only feeds the report.
    Blow-ups are recorded in the report; the estimate is None when one of
    the two extrapolation members failed.
    """
    epsilons = [float(e) for e in epsilons]
    if len(epsilons) < 2:
        raise ConvergenceError(f"recovery needs at least two epsilons, got {len(epsilons)}")
    eps_min = min(epsilons)
    needed = list(epsilons)
    if not any(np.isclose(e, 2.0 * eps_min, rtol=1e-12, atol=0.0) for e in epsilons):
        needed.append(2.0 * eps_min)

    results = run_ensemble(_scaled_measurement(sys, F1, grid, coupling), needed, threads)
    measured: Dict[float, BoundaryTrace] = {}
    failures: Dict[float, str] = {}
    for eps, res in zip(needed, results):
        if isinstance(res, DivergenceError):
            failures[eps] = str(res)
        else:
            measured[eps] = res

    lin = lambda_lin_map(sys, F1, grid) if reference is None else reference
    errors = tuple(
        trace_norm(measured[e] - lin, grid) if e in measured else float("nan") for e in epsilons
    )

    estimate = None
    estimate_error = None
    partner = next((e for e in needed if np.isclose(e, 2.0 * eps_min, rtol=1e-12, atol=0.0)), None)
    if eps_min in measured and partner in measured:
        estimate = measured[eps_min].scaled(2.0) - measured[partner]
        estimate_error = trace_norm(estimate - lin, grid)

    ok = [(e, err) for e, err in zip(epsilons, errors) if e in measured]
    rate = None
    if len(ok) >= 2 and not all(err == 0.0 for _, err in ok):
        try:
            rate = fit_loglog_slope([e for e, _ in ok], [err for _, err in ok])
        except ConvergenceError:
            logger.warning("recovery errors partly vanish; no rate fitted")
    best = min((err for _, err in ok), default=None)

    report = RecoveryReport(
        epsilons=tuple(epsilons),
        errors=errors,
        rate=rate,
        estimate_error=estimate_error,
        best_single_error=best,
        failures=failures,
    )
    logger.info(
        f"recovery over {len(epsilons)} epsilons: rate={rate}, "
        f"extrapolated error={estimate_error}, best single={best}"
    )
    return estimate, report
