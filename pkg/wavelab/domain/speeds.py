"""
Sound speed profiles and their admissibility and convexity checks.

The admissible class pins c^2 between m0 and m1 and to 1 outside the ball B_R
around the domain center. The convexity check is the sign condition
d/dr (r / c(r)) > 0 on radial profiles.
"""

from typing import Callable, Optional, Sequence

import numpy as np

from ..exceptions import ShapeMismatchError, SpeedError
from ..logging_config import get_logger
from .models import GridSpec, HerglotzReport, SpeedField, SpeedValidationReport

logger = get_logger(__name__)

EXTERIOR_TOL = 1e-12
HERGLOTZ_TOL = 1e-10


def validate_speed(field: SpeedField, grid: GridSpec) -> SpeedValidationReport:
    """Nodewise admissibility scan; the first violation in row-major order is reported."""
    values = field.values
    if values.shape != grid.shape:
        raise ShapeMismatchError(f"speed field {values.shape} does not match grid {grid.shape}")

    finite = np.isfinite(values)
    lo = float(np.min(values)) if finite.all() else float("nan")
    hi = float(np.max(values)) if finite.all() else float("nan")

    if not (field.m1 >= field.m0 > 0):
        return SpeedValidationReport(
            passed=False, violation="bounds_metadata", min_value=lo, max_value=hi
        )

    checks = (
        ("non_finite", ~finite),
        ("lower_bound", finite & (values < field.m0)),
        ("upper_bound", finite & (values > field.m1)),
        ("exterior", finite & (grid.radius > field.R) & (np.abs(values - 1.0) > EXTERIOR_TOL)),
    )
    combined = np.zeros(grid.shape, dtype=bool)
    for _, mask in checks:
        combined |= mask

    hits = np.flatnonzero(combined.ravel())
    if hits.size == 0:
        return SpeedValidationReport(passed=True, min_value=lo, max_value=hi)

    flat = int(hits[0])
    index = tuple(int(i) for i in np.unravel_index(flat, grid.shape))
    kind = next(name for name, mask in checks if mask[index])
    coords = tuple(float(c[index]) for c in grid.coordinates)
    logger.debug(f"speed '{field.name}' fails ({kind}) at node {index}")
    return SpeedValidationReport(
        passed=False,
        violation=kind,
        index=index,
        coordinates=coords,
        value=float(values[index]),
        min_value=lo,
        max_value=hi,
    )


def herglotz_check(profile: Sequence[float], dr: float) -> HerglotzReport:
    """
    Check d/dr (r / c(r)) > 0 at every interior sample of c on [0, R_max].

    Samples are taken at r_i = i * dr; the derivative is a centered difference.
    """
    c = np.asarray(profile, dtype=np.float64)
    if not dr > 0:
        raise SpeedError(f"sample spacing must be positive, got {dr}")
    if c.ndim != 1 or c.size < 3:
        raise SpeedError("radial profile needs at least three samples")
    if not np.all(c > 0):
        bad = int(np.flatnonzero(~(c > 0))[0])
        raise SpeedError(f"non-positive speed sample at r={bad * dr:g}")

    r = dr * np.arange(c.size)
    g = r / c
    derivative = (g[2:] - g[:-2]) / (2.0 * dr)
    radii = r[1:-1]
    failing = np.flatnonzero(derivative <= HERGLOTZ_TOL)
    if failing.size:
        return HerglotzReport(
            passed=False,
            first_failing_radius=float(radii[failing[0]]),
            radii=radii,
            derivative=derivative,
            reason="convexity",
        )
    return HerglotzReport(True, None, radii, derivative)


def sample_profile(radial: Callable[[np.ndarray], np.ndarray], r_max: float, dr: float) -> np.ndarray:
    n = int(round(r_max / dr)) + 1
    return np.asarray(radial(dr * np.arange(n)), dtype=np.float64)


def example_family_check(profile: Sequence[float], dr: float) -> HerglotzReport:
    """
    Membership in the example family 1/(1+r^2) <= c(r) <= 1 on [0, 1]
    together with the convexity condition.
    """
    c = np.asarray(profile, dtype=np.float64)
    r = dr * np.arange(c.size)
    on_unit = r <= 1.0 + 1e-12
    lower = 1.0 / (1.0 + r**2)
    outside = on_unit & ((c < lower - EXTERIOR_TOL) | (c > 1.0 + EXTERIOR_TOL))
    report = herglotz_check(c, dr)
    if outside.any():
        return HerglotzReport(
            passed=False,
            first_failing_radius=float(r[np.flatnonzero(outside)[0]]),
            radii=report.radii,
            derivative=report.derivative,
            reason="family_bounds",
        )
    return report


def radial_decay_check(field: SpeedField, grid: GridSpec) -> HerglotzReport:
    """
    Convexity condition for speeds that are not radial:
    x/|x| . grad(|x| / c(x)) > 0 at interior nodes with 0 < |x| <= R.
    """
    if field.values.shape != grid.shape:
        raise ShapeMismatchError(f"speed field {field.values.shape} does not match grid {grid.shape}")
    c = np.sqrt(field.values)
    rho = grid.radius
    g = rho / c
    grads = np.gradient(g, grid.h, edge_order=1)
    if grid.dim == 1:
        grads = [grads]
    safe_rho = np.where(rho > 0, rho, 1.0)
    radial_derivative = sum(
        (x - x0) / safe_rho * dg for x, x0, dg in zip(grid.coordinates, grid.center, grads)
    )

    interior = ~grid.outer_boundary_mask
    # nodes whose centered stencil straddles the center are skipped
    considered = interior & (rho > grid.h * 1.5) & (rho <= field.R)
    failing = considered & (radial_derivative <= HERGLOTZ_TOL)
    radii = rho[considered]
    derivative = radial_derivative[considered]
    if failing.any():
        flat = np.flatnonzero(failing.ravel())[0]
        return HerglotzReport(False, float(rho.ravel()[flat]), radii, derivative, "convexity")
    return HerglotzReport(True, None, radii, derivative)


# ---------------------------------------------------------------------------
# Builtin profiles
# ---------------------------------------------------------------------------


def _max_radius(grid: GridSpec) -> float:
    return float(np.max(grid.radius))


def constant_speed(grid: GridSpec, level: float = 1.0, R: Optional[float] = None) -> SpeedField:
    """c^2 equal to ``level`` everywhere; R covers the whole grid unless level is 1."""
    if not level > 0:
        raise SpeedError(f"constant c^2 must be positive, got {level}")
    if R is None:
        R = _max_radius(grid)
    speed = float(np.sqrt(level))
    return SpeedField(
        values=np.full(grid.shape, float(level)),
        m0=float(level),
        m1=float(level),
        R=float(R),
        name="constant",
        radial=lambda r: np.full_like(np.asarray(r, dtype=float), speed),
    )


def radial_decay_speed(grid: GridSpec, R: Optional[float] = None) -> SpeedField:
    """c(r) = 1/(1+r^2) inside B_R, c = 1 outside."""
    R_eff = _max_radius(grid) if R is None else float(R)
    rho = grid.radius
    inside = rho <= R_eff
    values = np.where(inside, 1.0 / (1.0 + rho**2) ** 2, 1.0)
    m0 = 1.0 / (1.0 + min(R_eff, _max_radius(grid)) ** 2) ** 2

    def radial(r):
        r = np.asarray(r, dtype=float)
        return np.where(r <= R_eff, 1.0 / (1.0 + r**2), 1.0)

    return SpeedField(values=values, m0=m0, m1=1.0, R=R_eff, name="radial-decay", radial=radial)


def bump(s: np.ndarray) -> np.ndarray:
    """C^3 compactly supported bump (1 - s^2)^4 on |s| < 1."""
    s = np.asarray(s, dtype=float)
    return np.where(np.abs(s) < 1.0, (1.0 - s**2) ** 4, 0.0)


def herglotz_bump_speed(
    grid: GridSpec,
    amplitude: float = 0.1,
    radius: float = 0.25,
    center: Optional[Sequence[float]] = None,
) -> SpeedField:
    """c^2 = 1 + amplitude * bump(|x - center| / radius)."""
    if not radius > 0:
        raise SpeedError(f"bump radius must be positive, got {radius}")
    if 1.0 + amplitude <= 0:
        raise SpeedError(f"bump amplitude {amplitude} makes c^2 non-positive")
    center = tuple(grid.center) if center is None else tuple(float(c) for c in center)
    dist = np.sqrt(sum((x - c0) ** 2 for x, c0 in zip(grid.coordinates, center)))
    values = 1.0 + amplitude * bump(dist / radius)
    offset = float(np.sqrt(sum((a - b) ** 2 for a, b in zip(center, grid.center))))

    radial = None
    if offset == 0.0:

        def radial(r):
            return np.sqrt(1.0 + amplitude * bump(np.asarray(r, dtype=float) / radius))

    return SpeedField(
        values=values,
        m0=min(1.0, 1.0 + amplitude),
        m1=max(1.0, 1.0 + amplitude),
        R=offset + radius,
        name="herglotz-bump",
        radial=radial,
    )


def speed_from_values(values: np.ndarray, grid: GridSpec, R: Optional[float] = None, name: str = "file") -> SpeedField:
    """Wrap sampled c^2 values, taking the bounds from the data."""
    values = np.asarray(values, dtype=np.float64)
    if values.shape != grid.shape:
        raise ShapeMismatchError(f"speed values {values.shape} do not match grid {grid.shape}")
    return SpeedField(
        values=values,
        m0=float(np.min(values)),
        m1=float(np.max(values)),
        R=_max_radius(grid) if R is None else float(R),
        name=name,
    )
