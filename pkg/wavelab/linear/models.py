"""
Data types for the linear wave solvers: source triples, trajectories and the
diagonal speed system.
"""

import dataclasses
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Optional, Sequence, Tuple, Union

import numpy as np

from ..domain.models import GridSpec, SpeedField, _frozen_copy
from ..domain.norms import l2_time_norm, sobolev_norm, sobolev_sq
from ..domain.speeds import validate_speed
from ..exceptions import ShapeMismatchError, SourceDataError, SpeedError

NCOMP = 3
BOUNDARY_TOL = 1e-10
ADMISSIBLE_SLACK = 1e-9

Forcing = Union[None, np.ndarray, Callable[[float, Tuple[np.ndarray, ...]], np.ndarray]]


def clamp_boundary(values: np.ndarray, grid: GridSpec, what: str) -> np.ndarray:
    """Zero the Dirichlet nodes of Omega' after checking they are already negligible."""
    values = np.array(values, dtype=np.float64, copy=True)
    mask = grid.outer_boundary_mask
    lead = (slice(None),) * (values.ndim - grid.dim)
    edge = values[lead + (mask,)]
    if edge.size and np.max(np.abs(edge)) > BOUNDARY_TOL:
        raise SourceDataError(
            f"{what} does not vanish on the outer boundary (max |value| = {np.max(np.abs(edge)):.3e})"
        )
    values[lead + (mask,)] = 0.0
    return values


def sample_forcing(f: Forcing, grid: GridSpec, ncomp: int = NCOMP) -> Optional[np.ndarray]:
    """Forcing on every time level, shape (n_steps + 1, ncomp, *shape)."""
    if f is None:
        return None
    if callable(f):
        levels = [np.asarray(f(float(t), grid.coordinates), dtype=np.float64) for t in grid.times]
        sampled = np.stack([np.broadcast_to(v, (ncomp,) + grid.shape) for v in levels])
    else:
        sampled = np.asarray(f, dtype=np.float64)
    expected = (grid.n_steps + 1, ncomp) + grid.shape
    if sampled.shape != expected:
        raise ShapeMismatchError(f"forcing has shape {sampled.shape}, expected {expected}")
    return sampled


@dataclass(frozen=True, eq=False)
class SourceData:
    """
    The triple F1 = (b0, b1, f) together with the scale epsilon.

    The arrays hold the unscaled F1; the data actually fed to a solver is
    epsilon * F1 (see ``displacement``, ``velocity`` and ``forcing_level``).
    base_norm is ||b0||_H3 + ||b1||_H2 + ||f||_L2H2 of F1.
    """

    b0: np.ndarray
    b1: np.ndarray
    f: Forcing = None
    epsilon: float = 1.0
    base_norm: float = float("nan")
    admissible: bool = False

    def __post_init__(self):
        if not 0.0 < self.epsilon <= 1.0:
            raise SourceDataError(f"epsilon must lie in (0, 1], got {self.epsilon}")
        b0 = _frozen_copy(self.b0)
        b1 = _frozen_copy(self.b1)
        if b0.shape != b1.shape or b0.shape[0] != NCOMP:
            raise ShapeMismatchError(f"b0 {b0.shape} and b1 {b1.shape} must both be (3, *shape)")
        object.__setattr__(self, "b0", b0)
        object.__setattr__(self, "b1", b1)
        if isinstance(self.f, np.ndarray):
            object.__setattr__(self, "f", _frozen_copy(self.f))
        if self.admissible and not self.base_norm <= 1.0 + ADMISSIBLE_SLACK:
            raise SourceDataError(
                f"data declared admissible but ||F1||_* = {self.base_norm:.6g} exceeds 1"
            )

    @classmethod
    def create(
        cls,
        b0,
        b1,
        f: Forcing,
        grid: GridSpec,
        epsilon: float = 1.0,
        admissible: bool = False,
    ) -> "SourceData":
        """Check the Dirichlet compatibility on ``grid`` and compute ||F1||_*."""
        b0 = np.broadcast_to(np.asarray(b0, dtype=np.float64), (NCOMP,) + grid.shape)
        b1 = np.broadcast_to(np.asarray(b1, dtype=np.float64), (NCOMP,) + grid.shape)
        b0 = clamp_boundary(b0, grid, "b0")
        b1 = clamp_boundary(b1, grid, "b1")
        if f is not None and not callable(f):
            f = clamp_boundary(sample_forcing(f, grid), grid, "forcing")
        return cls(
            b0=b0,
            b1=b1,
            f=f,
            epsilon=epsilon,
            base_norm=compute_base_norm(b0, b1, f, grid),
            admissible=admissible,
        )

    @property
    def displacement(self) -> np.ndarray:
        return self.epsilon * self.b0

    @property
    def velocity(self) -> np.ndarray:
        return self.epsilon * self.b1

    def forcing_level(self, n: int, grid: GridSpec) -> Optional[np.ndarray]:
        """epsilon * f at t = n * dt, or None for unforced data."""
        if self.f is None:
            return None
        if callable(self.f):
            level = np.broadcast_to(
                np.asarray(self.f(float(grid.times[n]), grid.coordinates), dtype=np.float64),
                self.b0.shape,
            )
        else:
            level = self.f[n]
        return self.epsilon * level

    def sampled_forcing(self, grid: GridSpec) -> np.ndarray:
        """Unscaled forcing on every level; zeros when unforced."""
        sampled = sample_forcing(self.f, grid)
        if sampled is None:
            return np.zeros((grid.n_steps + 1,) + self.b0.shape)
        return sampled

    @property
    def is_zero(self) -> bool:
        forced = self.f is not None and (
            callable(self.f) or bool(np.any(self.f))
        )
        return not (np.any(self.b0) or np.any(self.b1) or forced)

    def with_epsilon(self, epsilon: float) -> "SourceData":
        return dataclasses.replace(self, epsilon=float(epsilon))

    def scaled_by(self, alpha: float, admissible: Optional[bool] = None) -> "SourceData":
        """
        alpha * F1 at the same epsilon. Unless ``admissible`` is given, the
        result is admissible exactly when its norm is at most 1.
        """
        f = self.f
        if callable(f):
            inner = f
            f = lambda t, x: alpha * np.asarray(inner(t, x))  # noqa: E731
        elif f is not None:
            f = alpha * f
        norm = abs(alpha) * self.base_norm
        within = bool(norm <= 1.0 + ADMISSIBLE_SLACK)
        return SourceData(
            b0=alpha * self.b0,
            b1=alpha * self.b1,
            f=f,
            epsilon=self.epsilon,
            base_norm=norm,
            admissible=within if admissible is None else (admissible and within),
        )

    def normalized(self, target: float = 1.0, admissible: Optional[bool] = None) -> "SourceData":
        """Rescale F1 so that ||F1||_* equals ``target``."""
        if not self.base_norm > 0:
            raise SourceDataError("cannot normalise data with zero (or unknown) base norm")
        return self.scaled_by(target / self.base_norm, admissible)


def compute_base_norm(b0: np.ndarray, b1: np.ndarray, f: Forcing, grid: GridSpec) -> float:
    """||b0||_H3 + ||b1||_H2 + ||f||_L2H2; closures are evaluated one level at a time."""
    norm = sobolev_norm(b0, grid, 3) + sobolev_norm(b1, grid, 2)
    if f is None:
        return float(norm)
    if not callable(f):
        return float(norm + l2_time_norm(f, grid, 2))
    total = 0.0
    for n, (t, w) in enumerate(zip(grid.times, grid.time_weights)):
        level = np.broadcast_to(np.asarray(f(float(t), grid.coordinates), dtype=np.float64), b0.shape)
        clamp_boundary(level, grid, f"forcing at level {n}")
        total += w * float(np.sum(sobolev_sq(level, grid, 2)))
    return float(norm + np.sqrt(total))


@dataclass(frozen=True, eq=False)
class WaveField:
    """Trajectory of a vector field, snapshots shaped (levels, ncomp, *shape)."""

    snapshots: np.ndarray
    grid: GridSpec

    def __post_init__(self):
        snaps = _frozen_copy(self.snapshots)
        if snaps.ndim != self.grid.dim + 2 or snaps.shape[2:] != self.grid.shape:
            raise ShapeMismatchError(
                f"trajectory of shape {snaps.shape} does not match grid {self.grid.shape}"
            )
        object.__setattr__(self, "snapshots", snaps)

    @property
    def n_levels(self) -> int:
        return self.snapshots.shape[0]

    @property
    def ncomp(self) -> int:
        return self.snapshots.shape[1]

    @property
    def times(self) -> np.ndarray:
        return self.grid.dt * np.arange(self.n_levels)

    def component(self, i: int) -> np.ndarray:
        return self.snapshots[:, i]

    def level(self, n: int) -> np.ndarray:
        return self.snapshots[n]

    @property
    def final(self) -> np.ndarray:
        return self.snapshots[-1]


@dataclass(frozen=True, eq=False)
class SpeedSystem:
    """The three conformal factors of the diagonal operator, all admissible on ``grid``."""

    speeds: Tuple[SpeedField, ...]
    grid: GridSpec

    def __post_init__(self):
        speeds = tuple(self.speeds)
        if len(speeds) != NCOMP:
            raise SpeedError(f"a speed system needs exactly three speeds, got {len(speeds)}")
        object.__setattr__(self, "speeds", speeds)
        for i, field in enumerate(speeds):
            report = validate_speed(field, self.grid)
            if not report.passed:
                raise SpeedError(
                    f"speed {i + 1} ('{field.name}') is not admissible: {report.violation}"
                    + (f" at node {report.index}" if report.index is not None else "")
                )

    @classmethod
    def uniform(cls, field: SpeedField, grid: GridSpec) -> "SpeedSystem":
        return cls((field, field, field), grid)

    def with_component(self, i: int, field: SpeedField) -> "SpeedSystem":
        speeds = list(self.speeds)
        speeds[i] = field
        return SpeedSystem(tuple(speeds), self.grid)

    def on_grid(self, grid: GridSpec) -> "SpeedSystem":
        """Same sampled speeds on a grid that differs only in its time step."""
        if grid.shape != self.grid.shape:
            raise ShapeMismatchError(f"grid {grid.shape} differs spatially from {self.grid.shape}")
        return SpeedSystem(self.speeds, grid)

    @cached_property
    def c2(self) -> np.ndarray:
        return _frozen_copy(np.stack([s.values for s in self.speeds]))

    @property
    def c_max(self) -> float:
        return max(float(np.sqrt(s.m1)) for s in self.speeds)

    @property
    def m0(self) -> float:
        return min(s.m0 for s in self.speeds)

    @property
    def m1(self) -> float:
        return max(s.m1 for s in self.speeds)

    def slowest_speed(self) -> np.ndarray:
        """Nodewise minimum of c over the three components."""
        return np.sqrt(np.min(self.c2, axis=0))

    def c1_norm(self) -> float:
        """max over components of max(||c^2||_inf, ||grad_h c^2||_inf)."""
        best = 0.0
        for s in self.speeds:
            grads = np.gradient(s.values, self.grid.h, edge_order=1)
            if self.grid.dim == 1:
                grads = [grads]
            magnitude = np.sqrt(sum(g * g for g in grads))
            best = max(best, float(np.max(np.abs(s.values))), float(np.max(magnitude)))
        return best


def as_weights(weights: Sequence[float]) -> np.ndarray:
    w = np.asarray(weights, dtype=np.float64).ravel()
    if w.size == 1:
        w = np.repeat(w, NCOMP)
    if w.size != NCOMP:
        raise SourceDataError(f"expected one weight per component, got {w.size}")
    return w
