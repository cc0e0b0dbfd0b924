"""
Two-term expansion of the small-data solution and its remainder.

Matching powers of eps in u_tt - c^2 Lap u = |u|^2 + eps f1 gives
  w1: linear system with data F1
  w2: linear system with zero data and forcing (|w1|^2, |w1|^2, |w1|^2)
Both are computed with the same stencil as the nonlinear reference, so the
remainder u - w isolates the eps-scaling from the discretization error.
"""

from typing import Optional, Sequence

import numpy as np

from ..domain.models import GridSpec
from ..domain.norms import c_l2_norm, s_norm
from ..exceptions import ConvergenceError
from ..linear.convergence import fit_loglog_slope
from ..linear.models import ADMISSIBLE_SLACK, NCOMP, SourceData, SpeedSystem, WaveField
from ..linear.solver import discrete_wave_operator, solve_system_linear, solve_with_forcing
from ..logging_config import get_logger
from ..nonlinear.models import LifespanModel, NonlinearProblem, abs_square
from ..nonlinear.solver import solve_coupled
from ..parallel import run_ensemble
from .models import ErrorRecord, ParametrixBundle, ParametrixSweep

logger = get_logger(__name__)


def _unit_data(F1: SourceData) -> SourceData:
    if F1.base_norm > 1.0 + ADMISSIBLE_SLACK:
        logger.warning(f"||F1||_* = {F1.base_norm:.4g} exceeds 1; the expansion bound does not apply")
    return F1.with_epsilon(1.0)


def parametrix_terms(sys: SpeedSystem, F1: SourceData, grid: GridSpec):
    """(w1, w2); neither depends on eps."""
    F1 = _unit_data(F1)
    w1 = solve_system_linear(sys, F1, grid)
    source = np.stack([abs_square(level) for level in w1.snapshots])
    zeros = np.zeros((NCOMP,) + grid.shape)
    w2 = solve_with_forcing(sys, zeros, zeros, source, grid, kind="parametrix")
    return w1, w2


def build_parametrix(
    sys: SpeedSystem, F1: SourceData, epsilon: float, grid: GridSpec
) -> ParametrixBundle:
    w1, w2 = parametrix_terms(sys, F1, grid)
    return ParametrixBundle.assemble(w1, w2, epsilon)


def _reference(sys: SpeedSystem, F1: SourceData, epsilon: float, grid: GridSpec) -> WaveField:
    return solve_coupled(NonlinearProblem(sys, F1.with_epsilon(epsilon), grid))


def parametrix_error(
    bundle: ParametrixBundle,
    sys: SpeedSystem,
    F1: SourceData,
    grid: GridSpec,
    reference: Optional[WaveField] = None,
    model: Optional[LifespanModel] = None,
) -> ErrorRecord:
    """
    ||u - w||_S against the direct nonlinear solve at the same eps and grid.

    A blow-up of the reference propagates as BlowUpError. ``bound`` is
    2 D1(T)^3 eps^3 when ``model`` carries D1.
    """
    eps = bundle.epsilon
    u = _reference(sys, F1, eps, grid) if reference is None else reference
    err = s_norm(u.snapshots - bundle.w.snapshots, grid)
    first = s_norm(u.snapshots - bundle.first_order(), grid)
    bound = None
    if model is not None and model.D1 is not None:
        bound = 2.0 * model.energy_constant(grid.T) ** 3 * eps**3
    logger.debug(f"parametrix eps={eps:g}: err={err:.3e}, first order={first:.3e}")
    return ErrorRecord(
        epsilon=eps, err_norm=err, bound=bound, ratio=err / eps**3, first_order_err=first
    )


def _slope(epsilons, errors) -> Optional[float]:
    if all(e == 0.0 for e in errors):
        return None
    try:
        return fit_loglog_slope(epsilons, errors)
    except ConvergenceError:
        logger.warning("some but not all remainders vanish; no slope fitted")
        return None


def parametrix_sweep(
    sys: SpeedSystem,
    F1: SourceData,
    epsilons: Sequence[float],
    grid: GridSpec,
    model: Optional[LifespanModel] = None,
    threads: Optional[int] = None,
) -> ParametrixSweep:
    """Remainders over an eps-sweep; w1 and w2 are computed once and reused."""
    w1, w2 = parametrix_terms(sys, F1, grid)

    def member(eps):
        bundle = ParametrixBundle.assemble(w1, w2, eps)
        return parametrix_error(bundle, sys, F1, grid, model=model)

    records = tuple(run_ensemble(member, [float(e) for e in epsilons], threads))
    eps = [r.epsilon for r in records]
    sweep = ParametrixSweep(
        records=records,
        slope=_slope(eps, [r.err_norm for r in records]),
        first_order_slope=_slope(eps, [r.first_order_err for r in records]),
    )
    logger.info(f"parametrix sweep slopes: remainder {sweep.slope}, first order {sweep.first_order_slope}")
    return sweep


def defect_residual(
    bundle: ParametrixBundle, sys: SpeedSystem, F1: SourceData, grid: GridSpec
) -> np.ndarray:
    """
    Stencil defect L_h w - (|w|^2 + eps f1) on the interior levels 1..N-1.

    By construction of w1 and w2 it equals -2 eps^3 w1.w2 - eps^4 |w2|^2.
    """
    w = bundle.w.snapshots
    forcing = bundle.epsilon * F1.sampled_forcing(grid)[1:-1]
    target = np.stack([abs_square(level) for level in w[1:-1]]) + forcing
    return discrete_wave_operator(w, sys.c2, grid) - target


def defect_norm(
    bundle: ParametrixBundle, sys: SpeedSystem, F1: SourceData, grid: GridSpec
) -> float:
    """C([0,T]; L^2) norm of the stencil defect."""
    return c_l2_norm(defect_residual(bundle, sys, F1, grid), grid)
