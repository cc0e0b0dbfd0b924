"""
Discrete energy ledgers and the Gronwall-type a priori bound.

Gradients are forward differences on grid edges, the edge coefficient is the
mean of c^2 at its two end nodes, and the time derivative is the centered
difference, one-sided at the first and last level. The bound checked is
  sqrt(2 E_plain(t)) <= C (||u0||_H1 + ||u1||_L2 + ||f||_L2L2) exp(A t).
The order-k bound, k = 2 or 3, is
  ||u||_Hk + ||u_t||_H(k-1) <= C1 (1 + t) exp(A t) (data_k(t) + A t sup ||u||_H(k-1) + ||u_t||_H(k-2))
with data_k(t) = ||u0||_Hk + ||u1||_H(k-1) + ||f||_L2([0,t];H(k-1)).
"""

import dataclasses
from typing import Optional, Union

import numpy as np

from ..domain.models import GridSpec, SpeedField
from ..domain.norms import l2_time_norm, sobolev_norm, sobolev_sq, time_derivative
from ..exceptions import ShapeMismatchError, UnsupportedOrderError
from ..linear.models import SourceData, SpeedSystem, WaveField
from ..logging_config import get_logger
from .models import EnergyLedger, GronwallReport, HigherOrderLedger

logger = get_logger(__name__)

RATIO_SLACK = 1e-12
HIGHER_ORDERS = (2, 3)


def _edge_sums(u: np.ndarray, c2: np.ndarray, grid: GridSpec):
    """Per-level sums of h^d |D+ u|^2 over edges, unweighted and c^2-weighted."""
    plain = np.zeros(u.shape[0])
    weighted = np.zeros(u.shape[0])
    for axis in range(grid.dim):
        n = grid.shape[axis]
        lo = [slice(None)] * grid.dim
        hi = [slice(None)] * grid.dim
        lo[axis] = slice(0, n - 1)
        hi[axis] = slice(1, n)
        lo, hi = tuple(lo), tuple(hi)
        diff = (u[(slice(None),) + hi] - u[(slice(None),) + lo]) / grid.h
        c_edge = 0.5 * (c2[hi] + c2[lo])
        sq = diff * diff
        axes = tuple(range(1, u.ndim))
        plain += np.sum(sq, axis=axes)
        weighted += np.sum(c_edge * sq, axis=axes)
    return grid.cell_volume * plain, grid.cell_volume * weighted


def _scalar_trajectory(u: Union[WaveField, np.ndarray], grid: GridSpec, component: int) -> np.ndarray:
    if isinstance(u, WaveField):
        return u.component(component)
    values = np.asarray(u, dtype=np.float64)
    if values.ndim == grid.dim + 2:
        values = values[:, component]
    if values.shape[1:] != grid.shape:
        raise ShapeMismatchError(f"trajectory {values.shape} does not match grid {grid.shape}")
    return values


def energy_ledger(
    u: Union[WaveField, np.ndarray],
    c: SpeedField,
    grid: GridSpec,
    component: int = 0,
    C: Optional[float] = None,
    A_tilde: Optional[float] = None,
    data_norm: Optional[float] = None,
) -> EnergyLedger:
    """
    Energy series of one component under its speed ``c``. The bound curve is
    filled in when C, A_tilde and the data norm are all given.
    """
    values = _scalar_trajectory(u, grid, component)
    grad_plain, grad_weighted = _edge_sums(values, np.asarray(c.values), grid)
    velocity = time_derivative(values, grid.dt)
    axes = tuple(range(1, values.ndim))
    kinetic = np.sum(velocity * velocity * grid.quadrature_weights, axis=axes)
    times = grid.dt * np.arange(values.shape[0])
    bound = None
    if C is not None and A_tilde is not None and data_norm is not None:
        bound = C * data_norm * np.exp(A_tilde * times)
    return EnergyLedger(
        times=times,
        E_plain=0.5 * (grad_plain + kinetic),
        E_weighted=0.5 * (grad_weighted + kinetic),
        grad_plain=0.5 * grad_plain,
        grad_weighted=0.5 * grad_weighted,
        bound_curve=bound,
    )


def energy_drift(ledger: EnergyLedger, weighted: bool = False) -> float:
    """(max - min) / max of the energy over the interior levels 1..N-1."""
    series = (ledger.E_weighted if weighted else ledger.E_plain)[1:-1]
    top = float(np.max(series))
    if top == 0.0:
        return 0.0
    return (top - float(np.min(series))) / top


def data_norm(F: SourceData, grid: GridSpec, component: Optional[int] = None) -> float:
    """||u0||_H1 + ||u1||_L2 + ||f||_L2L2 of the scaled data eps F1."""
    b0 = F.displacement
    b1 = F.velocity
    forcing = F.epsilon * F.sampled_forcing(grid)
    if component is not None:
        b0, b1, forcing = b0[component], b1[component], forcing[:, component]
    return (
        sobolev_norm(b0, grid, 1)
        + sobolev_norm(b1, grid, 0)
        + l2_time_norm(forcing, grid, 0)
    )


def estimate_a_tilde(speed: Union[SpeedSystem, SpeedField], grid: GridSpec) -> float:
    """max(||c^2||_inf, ||grad_h c^2||_inf), over all components for a system."""
    if isinstance(speed, SpeedField):
        speed = SpeedSystem.uniform(speed, grid)
    return speed.c1_norm()


def _ratios(ledger: EnergyLedger, norm: float, C: float, A_tilde: float) -> np.ndarray:
    amplitude = np.sqrt(2.0 * np.maximum(ledger.E_plain, 0.0))
    bound = C * norm * np.exp(A_tilde * ledger.times)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = np.where(bound > 0, amplitude / np.where(bound > 0, bound, 1.0), np.inf)
    return np.where(amplitude == 0.0, 0.0, ratios)


def calibrate_gronwall_constant(ledger: EnergyLedger, norm: float, A_tilde: float) -> float:
    """Smallest C for which the bound holds on this ledger."""
    if not norm > 0:
        raise ValueError("calibration needs non-zero data")
    C = float(np.max(_ratios(ledger, norm, 1.0, A_tilde)))
    logger.info(f"calibrated Gronwall constant C={C:.6g} (A={A_tilde:.4g})")
    return C


def gronwall_check(ledger: EnergyLedger, norm: float, C: float, A_tilde: float) -> GronwallReport:
    ratios = _ratios(ledger, norm, C, A_tilde)
    worst = int(np.argmax(ratios)) if ratios.size else 0
    max_ratio = float(ratios[worst]) if ratios.size else 0.0
    passed = max_ratio <= 1.0 + RATIO_SLACK
    if not passed:
        logger.warning(f"Gronwall bound violated: ratio {max_ratio:.4g} at t={ledger.times[worst]:.4g}")
    return GronwallReport(
        passed=passed,
        max_ratio=max_ratio,
        C=C,
        A_tilde=A_tilde,
        data_norm=norm,
        worst_time=float(ledger.times[worst]) if ratios.size else 0.0,
    )


def estimate_a_beta(speed: Union[SpeedSystem, SpeedField], grid: GridSpec, order: int = 2) -> float:
    """max over components of ||c^2||_H^order, never below the first-order rate."""
    fields = speed.speeds if isinstance(speed, SpeedSystem) else (speed,)
    sobolev = max(sobolev_norm(np.asarray(f.values), grid, order) for f in fields)
    return max(float(sobolev), estimate_a_tilde(speed, grid))


def _level_norms(values: np.ndarray, grid: GridSpec, order: int) -> np.ndarray:
    return np.sqrt(sobolev_sq(values, grid, order).reshape(values.shape[0], -1).sum(axis=1))


def _cumulative_l2(values: np.ndarray, grid: GridSpec, order: int) -> np.ndarray:
    """||f||_L2([0, t_n]; H^order) at every level, trapezoid rule in time."""
    sq = sobolev_sq(values, grid, order).reshape(values.shape[0], -1).sum(axis=1)
    steps = 0.5 * grid.dt * (sq[1:] + sq[:-1])
    return np.sqrt(np.concatenate(([0.0], np.cumsum(steps))))


def higher_order_ledger(
    u: Union[WaveField, np.ndarray],
    F: SourceData,
    grid: GridSpec,
    component: int = 0,
    order: int = 2,
    C1: Optional[float] = None,
    A_beta: Optional[float] = None,
) -> HigherOrderLedger:
    """
    Terms of the order-k bound for the data F actually solved with
    (eps F1). The bound curve is filled in when C1 and A_beta are given.
    """
    if not HIGHER_ORDERS[0] <= order <= HIGHER_ORDERS[1]:
        raise UnsupportedOrderError(f"higher-order bound needs order 2 or 3, got {order}")
    values = _scalar_trajectory(u, grid, component)
    velocity = time_derivative(values, grid.dt)
    forcing = F.epsilon * F.sampled_forcing(grid)[:, component]
    initial = sobolev_norm(F.displacement[component], grid, order) + sobolev_norm(
        F.velocity[component], grid, order - 1
    )
    ledger = HigherOrderLedger(
        times=grid.dt * np.arange(values.shape[0]),
        order=order,
        norm=_level_norms(values, grid, order) + _level_norms(velocity, grid, order - 1),
        lower=_level_norms(values, grid, order - 1) + _level_norms(velocity, grid, order - 2),
        data=initial + _cumulative_l2(forcing, grid, order - 1),
    )
    if C1 is not None and A_beta is not None:
        ledger = dataclasses.replace(ledger, bound_curve=C1 * _higher_order_curve(ledger, A_beta))
    return ledger


def _higher_order_curve(ledger: HigherOrderLedger, A_beta: float) -> np.ndarray:
    """(1 + t) exp(A t) (data(t) + A t sup_{s<=t} lower(s)), the bound with C1 = 1."""
    t = ledger.times
    lower = np.maximum.accumulate(ledger.lower)
    return (1.0 + t) * np.exp(A_beta * t) * (ledger.data + A_beta * t * lower)


def _higher_order_ratios(ledger: HigherOrderLedger, C1: float, A_beta: float) -> np.ndarray:
    amplitude = np.maximum.accumulate(ledger.norm)
    bound = C1 * _higher_order_curve(ledger, A_beta)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = np.where(bound > 0, amplitude / np.where(bound > 0, bound, 1.0), np.inf)
    return np.where(amplitude == 0.0, 0.0, ratios)


def calibrate_higher_order_constant(ledger: HigherOrderLedger, A_beta: float) -> float:
    """Smallest C1 for which the order-k bound holds on this ledger."""
    if not np.any(ledger.data > 0):
        raise ValueError("calibration needs non-zero data")
    C1 = float(np.max(_higher_order_ratios(ledger, 1.0, A_beta)))
    logger.info(f"calibrated order-{ledger.order} constant C1={C1:.6g} (A={A_beta:.4g})")
    return C1


def higher_order_check(ledger: HigherOrderLedger, C1: float, A_beta: float) -> GronwallReport:
    ratios = _higher_order_ratios(ledger, C1, A_beta)
    worst = int(np.argmax(ratios)) if ratios.size else 0
    max_ratio = float(ratios[worst]) if ratios.size else 0.0
    passed = max_ratio <= 1.0 + RATIO_SLACK
    if not passed:
        logger.warning(
            f"order-{ledger.order} bound violated: ratio {max_ratio:.4g} at t={ledger.times[worst]:.4g}"
        )
    return GronwallReport(
        passed=passed,
        max_ratio=max_ratio,
        C=C1,
        A_tilde=A_beta,
        data_norm=float(ledger.data[-1]) if ledger.data.size else 0.0,
        worst_time=float(ledger.times[worst]) if ratios.size else 0.0,
    )
