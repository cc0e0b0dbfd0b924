"""
Explicit leapfrog stepping for u_tt = c^2 Lap u + g on the Omega' grid.

Arrays carry any number of leading axes (components, time levels) followed by
the spatial axes. The Laplacian is the standard 2d+1 point stencil; its value
on the Dirichlet nodes is zero and the updated level is clamped there.
"""

import time
from typing import Callable, Optional

import numpy as np

from ..domain.models import GridSpec
from ..exceptions import BlowUpError, DivergenceError
from ..logging_config import get_logger
from ..metrics import record_solve, record_solve_failure

logger = get_logger(__name__)

ForcingFn = Callable[[int], Optional[np.ndarray]]
SourceTerm = Callable[[np.ndarray], np.ndarray]
Observer = Callable[[int, np.ndarray], None]


def laplacian(u: np.ndarray, h: float, dim: int) -> np.ndarray:
    """Second-order Laplacian over the trailing ``dim`` axes, zero on the boundary."""
    lead = (slice(None),) * (u.ndim - dim)
    core = lead + (slice(1, -1),) * dim
    acc = -2.0 * dim * u[core]
    for axis in range(dim):
        plus = list(core)
        minus = list(core)
        plus[len(lead) + axis] = slice(2, None)
        minus[len(lead) + axis] = slice(None, -2)
        acc = acc + u[tuple(plus)] + u[tuple(minus)]
    out = np.zeros_like(u)
    out[core] = acc / (h * h)
    return out


def no_forcing(n: int) -> None:
    return None


class LeapfrogStepper:
    """
    u^{n+1} = 2u^n - u^{n-1} + dt^2 (c^2 Lap_h u^n + f^n + g(u^n))

    ``source_term`` g is evaluated explicitly at the current level. When a
    ``blowup_threshold`` is given, any nodal value beyond it (or a non-finite
    value) raises BlowUpError; otherwise non-finite values raise DivergenceError.
    """

    def __init__(
        self,
        c2: np.ndarray,
        grid: GridSpec,
        kind: str = "linear",
        source_term: Optional[SourceTerm] = None,
        blowup_threshold: Optional[float] = None,
    ):
        self.c2 = np.asarray(c2, dtype=np.float64)
        self.grid = grid
        self.kind = kind
        self.source_term = source_term
        self.blowup_threshold = blowup_threshold
        self._boundary = (slice(None),) * (self.c2.ndim - grid.dim) + (grid.outer_boundary_mask,)
        self._dt2 = grid.dt * grid.dt

    def acceleration(self, u: np.ndarray, f: Optional[np.ndarray]) -> np.ndarray:
        acc = self.c2 * laplacian(u, self.grid.h, self.grid.dim)
        if f is not None:
            acc = acc + f
        if self.source_term is not None:
            acc = acc + self.source_term(u)
        return acc

    def start(self, b0: np.ndarray, b1: np.ndarray, f0: Optional[np.ndarray]) -> np.ndarray:
        """Second-order Taylor start for level 1."""
        u1 = b0 + self.grid.dt * b1 + 0.5 * self._dt2 * self.acceleration(b0, f0)
        u1[self._boundary] = 0.0
        self._guard(u1, 1)
        return u1

    def step(
        self, u_prev: np.ndarray, u_curr: np.ndarray, f_n: Optional[np.ndarray], n: int
    ) -> np.ndarray:
        u_next = 2.0 * u_curr - u_prev + self._dt2 * self.acceleration(u_curr, f_n)
        u_next[self._boundary] = 0.0
        self._guard(u_next, n + 1)
        return u_next

    def run(
        self,
        b0: np.ndarray,
        b1: np.ndarray,
        forcing: ForcingFn = no_forcing,
        observer: Optional[Observer] = None,
        store: bool = True,
    ) -> np.ndarray:
        """
        Trajectory on levels 0..n_steps, or only the final level when
        ``store`` is false. ``observer(n, u)`` sees every level as it is made.
        """
        n_steps = self.grid.n_steps
        traj = np.empty((n_steps + 1,) + self.c2.shape) if store else None

        def emit(n, u):
            if traj is not None:
                traj[n] = u
            if observer is not None:
                observer(n, u)

        started = time.perf_counter()
        try:
            u_prev = np.array(b0, dtype=np.float64, copy=True)
            u_prev[self._boundary] = 0.0
            emit(0, u_prev)
            u_curr = self.start(u_prev, b1, forcing(0))
            emit(1, u_curr)
            for n in range(1, n_steps):
                u_prev, u_curr = u_curr, self.step(u_prev, u_curr, forcing(n), n)
                emit(n + 1, u_curr)
        except DivergenceError as exc:
            record_solve_failure(self.kind, type(exc).__name__)
            logger.warning(f"{self.kind} solve stopped: {exc}")
            raise
        record_solve(self.kind, n_steps, time.perf_counter() - started)
        return traj if store else u_curr

    def resume(
        self,
        u_prev: np.ndarray,
        u_curr: np.ndarray,
        n_steps: int,
        forcing: ForcingFn = no_forcing,
        first_level: int = 1,
    ) -> np.ndarray:
        """Continue from an explicit pair of levels; returns the pair plus n_steps new levels."""
        traj = np.empty((n_steps + 2,) + self.c2.shape)
        traj[0] = u_prev
        traj[1] = u_curr
        started = time.perf_counter()
        for k in range(n_steps):
            n = first_level + k
            traj[k + 2] = self.step(traj[k], traj[k + 1], forcing(n), n)
        record_solve(self.kind, n_steps, time.perf_counter() - started)
        return traj

    def _guard(self, u: np.ndarray, step: int) -> None:
        finite = np.isfinite(u)
        if not finite.all():
            comp = self._first_component(~finite)
            if self.blowup_threshold is not None:
                raise BlowUpError(step, comp, "non-finite values")
            raise DivergenceError(step, comp, "non-finite values")
        if self.blowup_threshold is not None:
            over = np.abs(u) > self.blowup_threshold
            if over.any():
                raise BlowUpError(
                    step,
                    self._first_component(over),
                    f"|u| exceeded {self.blowup_threshold:.3g}",
                )

    def _first_component(self, mask: np.ndarray) -> Optional[int]:
        if mask.ndim == self.grid.dim:
            return None
        per_comp = mask.reshape(mask.shape[0], -1).any(axis=1)
        return int(np.flatnonzero(per_comp)[0])
