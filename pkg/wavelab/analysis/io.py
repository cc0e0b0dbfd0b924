"""
CSV export of analysis artifacts.

Column order is fixed per artifact and floats are printed with 17
significant digits, so identical runs give byte-identical files.
"""

from pathlib import Path

import pandas as pd

from ..domain.io import FLOAT_FORMAT, PathLike
from ..domain.norms import sobolev_sq
from ..linear.models import WaveField
from .models import BoundaryTrace, EnergyLedger

TRAJECTORY_COLUMNS = ("t", "level", "component", "l2", "max_abs")


def write_frame_csv(path: PathLike, frame: pd.DataFrame) -> Path:
    path = Path(path)
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    return path


def write_trace_csv(path: PathLike, tr: BoundaryTrace) -> Path:
    """Columns t, x[, y[, z]], u1, u2, u3."""
    return write_frame_csv(path, tr.to_frame())


def write_ledger_csv(path: PathLike, ledger: EnergyLedger) -> Path:
    """Columns t, E_plain, E_weighted, bound."""
    return write_frame_csv(path, ledger.to_frame())


def trajectory_summary(u: WaveField) -> pd.DataFrame:
    """Per level and component: discrete L^2 norm over Omega' and max |u|."""
    sq = sobolev_sq(u.snapshots, u.grid, 0)
    peak = abs(u.snapshots).reshape(u.n_levels, u.ncomp, -1).max(axis=2)
    rows = []
    for n, t in enumerate(u.times):
        for i in range(u.ncomp):
            rows.append((t, n, i + 1, float(sq[n, i]) ** 0.5, float(peak[n, i])))
    return pd.DataFrame(rows, columns=list(TRAJECTORY_COLUMNS))
