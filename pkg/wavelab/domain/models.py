"""
Domain types: grids, sampled sound speeds and scalar snapshots.

All types are immutable after construction; sampled arrays are copied and
flagged read-only so that they can be shared freely between threads.
"""

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Optional, Tuple

import numpy as np

from ..exceptions import UnsupportedOrderError

Extent = Tuple[Tuple[float, float], ...]

MAX_SOBOLEV_ORDER = 3


def _frozen_copy(values) -> np.ndarray:
    arr = np.array(values, dtype=np.float64, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class GridSpec:
    """Uniform node grid on the box Omega' with an aligned inner box Omega."""

    dim: int
    outer_extent: Extent
    inner_extent: Extent
    h: float
    dt: float
    T: float
    n_steps: int
    stability_factor: float = 0.9
    c_max: float = 1.0

    @cached_property
    def shape(self) -> Tuple[int, ...]:
        return tuple(int(round((hi - lo) / self.h)) + 1 for lo, hi in self.outer_extent)

    @cached_property
    def axes(self) -> Tuple[np.ndarray, ...]:
        return tuple(
            _frozen_copy(lo + self.h * np.arange(n))
            for (lo, _), n in zip(self.outer_extent, self.shape)
        )

    @cached_property
    def coordinates(self) -> Tuple[np.ndarray, ...]:
        """Node coordinates as one array per axis (``indexing='ij'``)."""
        return tuple(_frozen_copy(c) for c in np.meshgrid(*self.axes, indexing="ij"))

    @cached_property
    def center(self) -> Tuple[float, ...]:
        return tuple(0.5 * (lo + hi) for lo, hi in self.outer_extent)

    @cached_property
    def radius(self) -> np.ndarray:
        """Euclidean distance of every node from the domain center."""
        sq = sum((x - c) ** 2 for x, c in zip(self.coordinates, self.center))
        return _frozen_copy(np.sqrt(sq))

    @cached_property
    def inner_index_bounds(self) -> Tuple[Tuple[int, int], ...]:
        return tuple(
            (int(round((ilo - olo) / self.h)), int(round((ihi - olo) / self.h)))
            for (olo, _), (ilo, ihi) in zip(self.outer_extent, self.inner_extent)
        )

    @cached_property
    def inner_slices(self) -> Tuple[slice, ...]:
        return tuple(slice(lo, hi + 1) for lo, hi in self.inner_index_bounds)

    @cached_property
    def inner_mask(self) -> np.ndarray:
        """Nodes of the closed inner box."""
        mask = np.zeros(self.shape, dtype=bool)
        mask[self.inner_slices] = True
        mask.setflags(write=False)
        return mask

    @cached_property
    def inner_boundary_mask(self) -> np.ndarray:
        """Nodes on the faces of the inner box (the measurement surface)."""
        mask = self.inner_mask.copy()
        interior = tuple(slice(lo + 1, hi) for lo, hi in self.inner_index_bounds)
        mask[interior] = False
        mask.setflags(write=False)
        return mask

    @cached_property
    def inner_boundary_index(self) -> Tuple[np.ndarray, ...]:
        """Row-major node indices of the measurement surface."""
        return tuple(_frozen_idx(i) for i in np.nonzero(self.inner_boundary_mask))

    @cached_property
    def outer_boundary_mask(self) -> np.ndarray:
        """Nodes on the Dirichlet boundary of Omega'."""
        mask = np.ones(self.shape, dtype=bool)
        mask[tuple(slice(1, -1) for _ in range(self.dim))] = False
        mask.setflags(write=False)
        return mask

    @cached_property
    def quadrature_weights(self) -> np.ndarray:
        """Composite trapezoid weights on Omega' (sum equals its volume)."""
        weights = np.ones(self.shape)
        for axis, n in enumerate(self.shape):
            w = np.full(n, self.h)
            w[0] = w[-1] = 0.5 * self.h
            shape = [1] * self.dim
            shape[axis] = n
            weights = weights * w.reshape(shape)
        return _frozen_copy(weights)

    @cached_property
    def time_weights(self) -> np.ndarray:
        """Trapezoid weights over the time levels 0..n_steps."""
        w = np.full(self.n_steps + 1, self.dt)
        w[0] = w[-1] = 0.5 * self.dt
        return _frozen_copy(w)

    @cached_property
    def times(self) -> np.ndarray:
        return _frozen_copy(self.dt * np.arange(self.n_steps + 1))

    @property
    def surface_measure(self) -> float:
        return self.h ** (self.dim - 1)

    @property
    def cell_volume(self) -> float:
        return self.h**self.dim

    def courant(self, c_max: float) -> float:
        """Courant number of this grid for the given maximum speed."""
        return self.dt * c_max * math.sqrt(self.dim) / self.h

    def inner_diameter(self) -> float:
        """Euclidean diameter of the inner box."""
        return math.sqrt(sum((hi - lo) ** 2 for lo, hi in self.inner_extent))

    def check_shape(self, values: np.ndarray, what: str = "field") -> None:
        from ..exceptions import ShapeMismatchError

        if tuple(values.shape[-self.dim :]) != self.shape:
            raise ShapeMismatchError(
                f"{what} has spatial shape {tuple(values.shape[-self.dim:])}, grid is {self.shape}"
            )


def _frozen_idx(idx: np.ndarray) -> np.ndarray:
    idx = np.array(idx, copy=True)
    idx.setflags(write=False)
    return idx


@dataclass(frozen=True, eq=False)
class SpeedField:
    """One conformal factor c^2(x) sampled on the Omega' grid."""

    values: np.ndarray
    m0: float
    m1: float
    R: float
    smooth_order: int = 3
    name: str = "custom"
    radial: Optional[Callable[[np.ndarray], np.ndarray]] = field(default=None, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "values", _frozen_copy(self.values))

    @property
    def c_max(self) -> float:
        return float(np.sqrt(np.max(self.values)))

    @property
    def c_min(self) -> float:
        return float(np.sqrt(np.min(self.values)))


@dataclass(frozen=True, eq=False)
class ScalarFieldSnapshot:
    """A scalar grid function at one time level."""

    values: np.ndarray
    time_index: int = 0

    def __post_init__(self):
        values = _frozen_copy(self.values)
        if not np.all(np.isfinite(values)):
            raise ValueError(f"snapshot {self.time_index} contains non-finite values")
        object.__setattr__(self, "values", values)


@dataclass(frozen=True)
class SobolevOrder:
    """Discrete Sobolev order k in 0..3."""

    k: int

    def __post_init__(self):
        if not isinstance(self.k, (int, np.integer)) or not 0 <= self.k <= MAX_SOBOLEV_ORDER:
            raise UnsupportedOrderError(
                f"Sobolev order {self.k!r} unsupported (0..{MAX_SOBOLEV_ORDER})"
            )

    @classmethod
    def coerce(cls, order) -> "SobolevOrder":
        return order if isinstance(order, cls) else cls(order)


@dataclass(frozen=True)
class SpeedValidationReport:
    """Outcome of an admissibility scan; ``violation`` names the first failure."""

    passed: bool
    violation: Optional[str] = None
    index: Optional[Tuple[int, ...]] = None
    coordinates: Optional[Tuple[float, ...]] = None
    value: Optional[float] = None
    min_value: float = float("nan")
    max_value: float = float("nan")


@dataclass(frozen=True, eq=False)
class HerglotzReport:
    """Sign scan of d/dr (r / c(r))."""

    passed: bool
    first_failing_radius: Optional[float]
    radii: np.ndarray
    derivative: np.ndarray
    reason: Optional[str] = None
