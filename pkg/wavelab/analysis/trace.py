"""
Restriction of trajectories to the measurement surface and the trace bound.
"""

import dataclasses
import math
from typing import List, Optional, Sequence

import numpy as np

from ..domain.models import GridSpec
from ..domain.norms import l2_time_norm
from ..linear.models import NCOMP, WaveField
from ..linear.sources import standing_profile
from ..logging_config import get_logger
from .models import BoundaryTrace, TraceBoundReport

logger = get_logger(__name__)

TRACE_TOLERANCE = 0.2
ENSEMBLE_MODES = 3


def inner_grid(grid: GridSpec) -> GridSpec:
    """The same lattice restricted to the closed inner box."""
    return dataclasses.replace(grid, outer_extent=grid.inner_extent)


def trace(u: WaveField, grid: GridSpec) -> BoundaryTrace:
    """Values of every level on the inner-box faces; no interpolation."""
    idx = grid.inner_boundary_index
    samples = u.snapshots[(slice(None), slice(None)) + idx]
    coords = tuple(np.asarray(axis)[i] for axis, i in zip(grid.axes, idx))
    return BoundaryTrace(samples, u.times, coords, grid.surface_measure)


def trace_level_norm(tr: BoundaryTrace, level: int) -> float:
    """L^2 norm on the surface at one time level."""
    values = tr.samples[level]
    return float(np.sqrt(tr.surface_measure * np.sum(values * values)))


def trace_norm(tr: BoundaryTrace, grid: GridSpec) -> float:
    """L^2([0, T]; L^2(surface)) with trapezoid weights in time."""
    per_level = tr.surface_measure * np.sum(tr.samples * tr.samples, axis=(1, 2))
    weights = grid.time_weights[: per_level.size]
    return float(np.sqrt(np.sum(weights * per_level)))


def interior_h1_time_norm(u: WaveField, grid: GridSpec) -> float:
    """L^2([0, T]; H^1(Omega)) over the closed inner box."""
    inside = u.snapshots[(slice(None), slice(None)) + grid.inner_slices]
    return l2_time_norm(inside, inner_grid(grid), 1, weights=grid.time_weights[: u.n_levels])


def trace_ensemble(
    grid: GridSpec, members: int = 8, seed: int = 0, perturbation: float = 0.02
) -> List[WaveField]:
    """
    Synthetic smooth fields a g(t) (p + delta_i): p the first standing mode of
    Omega', g a random cosine in time, delta_i random low modes scaled to at
    most ``perturbation`` of max |p|.
    """
    rng = np.random.default_rng(seed)
    base = standing_profile(grid)
    t = grid.times.reshape((-1,) + (1,) * (grid.dim + 1))
    fields = []
    for _ in range(members):
        amplitude = rng.uniform(0.5, 2.0)
        omega = rng.uniform(1.0, 3.0)
        phase = rng.uniform(0.0, 2.0 * math.pi)
        comps = []
        for _ in range(NCOMP):
            delta = np.zeros(grid.shape)
            for mode in np.ndindex(*([ENSEMBLE_MODES] * grid.dim)):
                delta += rng.standard_normal() * standing_profile(grid, [m + 1 for m in mode])
            delta *= perturbation * rng.uniform() / max(np.max(np.abs(delta)), 1e-300)
            comps.append(base + delta)
        spatial = np.stack(comps)[None]
        fields.append(WaveField(amplitude * np.cos(omega * t + phase) * spatial, grid))
    return fields


def fit_trace_constant(
    fields: Sequence[WaveField], grid: GridSpec, tolerance: float = TRACE_TOLERANCE
) -> TraceBoundReport:
    """
    One constant C with ||tr u|| <= C ||u||_{L^2 H^1(Omega)} across the
    ensemble; passes when every ratio is within ``tolerance`` of the mean.
    """
    ratios = []
    for u in fields:
        denom = interior_h1_time_norm(u, grid)
        if denom > 0:
            ratios.append(trace_norm(trace(u, grid), grid) / denom)
    if not ratios:
        return TraceBoundReport(True, 0.0, (), 0.0, tolerance)
    mean = float(np.mean(ratios))
    deviation = float(np.max(np.abs(np.asarray(ratios) / mean - 1.0)))
    logger.info(f"trace constant {mean:.4g} over {len(ratios)} members, spread {deviation:.2%}")
    return TraceBoundReport(deviation <= tolerance, mean, tuple(ratios), deviation, tolerance)


def check_trace_bound(
    grid: GridSpec, members: int = 8, seed: int = 0, tolerance: Optional[float] = None
) -> TraceBoundReport:
    return fit_trace_constant(
        trace_ensemble(grid, members, seed), grid, TRACE_TOLERANCE if tolerance is None else tolerance
    )
