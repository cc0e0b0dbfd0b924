"""
Grid construction for the nested boxes Omega inside Omega'.
"""

import math
from typing import Sequence, Tuple, Union

from ..exceptions import GridError
from ..logging_config import get_logger
from .models import Extent, GridSpec

logger = get_logger(__name__)

Interval = Tuple[float, float]
ALIGN_TOL = 1e-6
DEFAULT_STABILITY_FACTOR = 0.9


def _normalize_extent(extent: Union[Interval, Sequence[Interval]], dim: int) -> Extent:
    """Accept one (lo, hi) pair for every axis or one pair per axis."""
    if len(extent) == 2 and all(isinstance(v, (int, float)) for v in extent):
        pairs = [tuple(extent)] * dim
    else:
        pairs = [tuple(p) for p in extent]
    if len(pairs) != dim:
        raise GridError(f"expected {dim} intervals, got {len(pairs)}")
    return tuple((float(lo), float(hi)) for lo, hi in pairs)


def _cells(length: float, h: float, what: str) -> int:
    n = length / h
    if abs(n - round(n)) > ALIGN_TOL:
        raise GridError(f"{what} ({length:g}) is not a multiple of h={h:g}")
    return int(round(n))


def make_grid(
    dim: int,
    outer_extent,
    inner_extent,
    h: float,
    T: float,
    stability_factor: float = DEFAULT_STABILITY_FACTOR,
    c_max: float = 1.0,
) -> GridSpec:
    """
    Build a GridSpec whose time step satisfies the explicit-scheme CFL bound.

    The step dt = stability_factor * h / (sqrt(dim) * c_max) is shrunk so that
    an integer number of steps lands exactly on T.
    """
    if dim not in (1, 2, 3):
        raise GridError(f"dimension must be 1, 2 or 3, got {dim}")
    if not h > 0:
        raise GridError(f"spacing h must be positive, got {h}")
    if not T > 0:
        raise GridError(f"final time T must be positive, got {T}")
    if not 0 < stability_factor <= 1:
        raise GridError(f"stability factor must lie in (0, 1], got {stability_factor}")
    if not c_max > 0:
        raise GridError(f"maximum speed must be positive, got {c_max}")

    outer = _normalize_extent(outer_extent, dim)
    inner = _normalize_extent(inner_extent, dim)

    for axis, ((olo, ohi), (ilo, ihi)) in enumerate(zip(outer, inner)):
        if not (olo < ohi and ilo < ihi):
            raise GridError(f"axis {axis}: extents must be well ordered")
        _cells(ohi - olo, h, f"axis {axis} length")
        lo_margin = _cells(ilo - olo, h, f"axis {axis} inner lower offset")
        hi_margin = _cells(ohi - ihi, h, f"axis {axis} inner upper offset")
        if lo_margin < 1 or hi_margin < 1:
            raise GridError(
                f"axis {axis}: inner extent [{ilo:g}, {ihi:g}] must lie strictly inside "
                f"[{olo:g}, {ohi:g}] with at least one cell of margin"
            )
        if _cells(ihi - ilo, h, f"axis {axis} inner length") < 1:
            raise GridError(f"axis {axis}: inner extent narrower than one cell")

    dt = stability_factor * h / (math.sqrt(dim) * c_max)
    n_steps = max(1, math.ceil(T / dt - 1e-9))
    dt = T / n_steps

    grid = GridSpec(
        dim=dim,
        outer_extent=outer,
        inner_extent=inner,
        h=float(h),
        dt=dt,
        T=float(T),
        n_steps=n_steps,
        stability_factor=float(stability_factor),
        c_max=float(c_max),
    )
    logger.debug(f"grid {grid.shape} h={h:g} dt={dt:.6g} steps={n_steps}")
    return grid


def with_speed_limit(grid: GridSpec, c_max: float) -> GridSpec:
    """Rebuild a grid so that its time step is stable for speeds up to c_max."""
    if math.isclose(c_max, grid.c_max, rel_tol=0.0, abs_tol=0.0):
        return grid
    return make_grid(
        grid.dim,
        grid.outer_extent,
        grid.inner_extent,
        grid.h,
        grid.T,
        grid.stability_factor,
        c_max,
    )


def with_final_time(grid: GridSpec, T: float) -> GridSpec:
    """Same spatial grid, different final time."""
    return make_grid(
        grid.dim,
        grid.outer_extent,
        grid.inner_extent,
        grid.h,
        T,
        grid.stability_factor,
        grid.c_max,
    )
