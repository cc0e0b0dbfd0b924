"""
Builtin source recipes.

Every recipe multiplies its profile by the product of sin(pi (x - lo) / L)
over the axes of Omega', so that the data vanishes on the Dirichlet boundary.
Passing ``norm`` rescales F1 so that ||F1||_* equals it.
"""

import math
from typing import Optional, Sequence, Union

import numpy as np

from ..domain.models import GridSpec
from .models import NCOMP, SourceData, as_weights

Mode = Union[int, Sequence[int]]


def boundary_envelope(grid: GridSpec, coords=None) -> np.ndarray:
    coords = grid.coordinates if coords is None else coords
    env = np.ones(grid.shape)
    for x, (lo, hi) in zip(coords, grid.outer_extent):
        env = env * np.sin(math.pi * (x - lo) / (hi - lo))
    return env


def standing_profile(grid: GridSpec, mode: Mode = 1, coords=None) -> np.ndarray:
    """Product of sin(m_a pi (x_a - lo_a) / L_a); the mode-1 profile is the envelope itself."""
    coords = grid.coordinates if coords is None else coords
    modes = [mode] * grid.dim if isinstance(mode, int) else list(mode)
    profile = np.ones(grid.shape)
    for x, m, (lo, hi) in zip(coords, modes, grid.outer_extent):
        profile = profile * np.sin(m * math.pi * (x - lo) / (hi - lo))
    return profile


def gaussian_profile(grid: GridSpec, center: Optional[Sequence[float]] = None, width: float = 0.1) -> np.ndarray:
    center = grid.center if center is None else tuple(center)
    sq = sum((x - c) ** 2 for x, c in zip(grid.coordinates, center))
    return np.exp(-sq / (2.0 * width * width)) * boundary_envelope(grid)


def _finish(source: SourceData, norm: Optional[float], epsilon: float) -> SourceData:
    if norm is not None:
        source = source.normalized(norm)
    return source.with_epsilon(epsilon)


def _stack(profile: np.ndarray, weights) -> np.ndarray:
    w = as_weights(weights)
    return w.reshape((NCOMP,) + (1,) * profile.ndim) * profile[None]


def zero_source(grid: GridSpec, epsilon: float = 1.0) -> SourceData:
    zeros = np.zeros((NCOMP,) + grid.shape)
    return SourceData(b0=zeros, b1=zeros, f=None, epsilon=epsilon, base_norm=0.0, admissible=True)


def standing_mode_source(
    grid: GridSpec,
    mode: Mode = 1,
    weights: Sequence[float] = (1.0, 1.0, 1.0),
    norm: Optional[float] = None,
    epsilon: float = 1.0,
) -> SourceData:
    """Initial displacement in one standing mode of Omega', zero velocity and forcing."""
    b0 = _stack(standing_profile(grid, mode), weights)
    source = SourceData.create(b0, np.zeros_like(b0), None, grid)
    return _finish(source, norm, epsilon)


def gaussian_pulse_source(
    grid: GridSpec,
    center: Optional[Sequence[float]] = None,
    width: float = 0.1,
    weights: Sequence[float] = (1.0, 1.0, 1.0),
    norm: Optional[float] = None,
    epsilon: float = 1.0,
) -> SourceData:
    """Gaussian initial displacement, zero velocity and forcing."""
    b0 = _stack(gaussian_profile(grid, center, width), weights)
    source = SourceData.create(b0, np.zeros_like(b0), None, grid)
    return _finish(source, norm, epsilon)


def gaussian_forcing(
    grid: GridSpec,
    center: Optional[Sequence[float]] = None,
    width: float = 0.1,
    frequency: float = 1.0,
    weights: Sequence[float] = (1.0, 1.0, 1.0),
    norm: Optional[float] = None,
    epsilon: float = 1.0,
) -> SourceData:
    """Zero initial data driven by sin(2 pi nu t) times a gaussian."""
    spatial = _stack(gaussian_profile(grid, center, width), weights)

    def f(t, coords):
        return math.sin(2.0 * math.pi * frequency * t) * spatial

    zeros = np.zeros_like(spatial)
    source = SourceData.create(zeros, zeros, f, grid)
    return _finish(source, norm, epsilon)


RECIPES = {
    "standing-mode": standing_mode_source,
    "gaussian-pulse": gaussian_pulse_source,
    "zero": zero_source,
}
