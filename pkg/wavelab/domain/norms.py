"""
Discrete Sobolev norms on the node grid.

Derivatives use centered second-order differences in the interior and
first-order one-sided differences at boundary nodes (numpy.gradient with
edge_order=1). Integrals use the composite trapezoid weights of the grid.
"""

from typing import List, Sequence, Union

import numpy as np

from ..exceptions import ShapeMismatchError
from .models import GridSpec, ScalarFieldSnapshot, SobolevOrder

FieldLike = Union[ScalarFieldSnapshot, np.ndarray, Sequence[np.ndarray]]


def _as_array(u: FieldLike, grid: GridSpec) -> np.ndarray:
    if isinstance(u, ScalarFieldSnapshot):
        values = u.values
    elif isinstance(u, np.ndarray):
        values = u
    else:
        values = np.stack([np.asarray(c, dtype=np.float64) for c in u])
    if values.ndim not in (grid.dim, grid.dim + 1) or values.shape[-grid.dim :] != grid.shape:
        raise ShapeMismatchError(
            f"field of shape {values.shape} does not match grid {grid.shape}"
        )
    return values


def _spatial_axes(values: np.ndarray, grid: GridSpec) -> tuple:
    return tuple(range(values.ndim - grid.dim, values.ndim))


def derivative_energy_levels(values: np.ndarray, grid: GridSpec, order: int) -> List[np.ndarray]:
    """
    Pointwise sums of squared partial derivatives, one array per level.

    Entry i holds sum over all ordered multi-indices of length i of
    |d^i u|^2, so entry 2 contains u_xx^2 + 2 u_xy^2 + u_yy^2 in 2D.
    """
    axes = _spatial_axes(values, grid)
    level = [values]
    sums = [values * values]
    for _ in range(order):
        nxt = []
        for arr in level:
            grads = np.gradient(arr, grid.h, axis=axes, edge_order=1)
            if grid.dim == 1:
                grads = [grads]
            nxt.extend(grads)
        level = nxt
        total = np.zeros_like(values)
        for g in level:
            total += g * g
        sums.append(total)
    return sums


def sobolev_sq(values: np.ndarray, grid: GridSpec, order: int) -> np.ndarray:
    """Squared H^k norm over the spatial axes; leading axes are kept."""
    levels = derivative_energy_levels(values, grid, order)
    density = np.zeros_like(values)
    for lvl in levels:
        density += lvl
    axes = _spatial_axes(values, grid)
    return np.sum(density * grid.quadrature_weights, axis=axes)


def sobolev_norm(u: FieldLike, grid: GridSpec, order=0) -> float:
    """
    Discrete H^k norm of a scalar field or a 3-vector of fields.

    For vectors the squared component norms are summed before the root.
    """
    k = SobolevOrder.coerce(order).k
    values = _as_array(u, grid)
    return float(np.sqrt(np.sum(sobolev_sq(values, grid, k))))


def l2_norm(u: FieldLike, grid: GridSpec) -> float:
    return sobolev_norm(u, grid, 0)


def time_derivative(snapshots: np.ndarray, dt: float) -> np.ndarray:
    """Centered differences in time, one-sided at the first and last level."""
    return np.gradient(snapshots, dt, axis=0, edge_order=1)


def c_l2_norm(snapshots: np.ndarray, grid: GridSpec) -> float:
    """max over time levels of the L^2 norm; snapshots are (steps, comps, *shape)."""
    per_step = sobolev_sq(snapshots, grid, 0).reshape(snapshots.shape[0], -1).sum(axis=1)
    return float(np.sqrt(per_step.max()))


def l2_time_norm(snapshots: np.ndarray, grid: GridSpec, order: int = 0, weights=None) -> float:
    """L^2([0,T]; H^k) norm with trapezoid weights in time."""
    k = SobolevOrder.coerce(order).k
    per_step = sobolev_sq(snapshots, grid, k).reshape(snapshots.shape[0], -1).sum(axis=1)
    w = grid.time_weights if weights is None else weights
    return float(np.sqrt(np.sum(w * per_step)))


def s_norm(snapshots: np.ndarray, grid: GridSpec) -> float:
    """
    Norm of C([0,T];H^1) intersected with C^1([0,T];L^2):
    max over levels of the H^1 norm plus max over levels of the L^2 norm of
    the centered time difference.
    """
    n = snapshots.shape[0]
    h1 = sobolev_sq(snapshots, grid, 1).reshape(n, -1).sum(axis=1)
    velocity = time_derivative(snapshots, grid.dt)
    v0 = sobolev_sq(velocity, grid, 0).reshape(n, -1).sum(axis=1)
    return float(np.sqrt(h1.max()) + np.sqrt(v0.max()))
