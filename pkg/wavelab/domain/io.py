"""
Field serialization.

Binary layout: one ASCII header line ``dim h nx [ny [nz]]`` terminated by a
newline, followed by the node values as little-endian float64 in row-major
order. Vector fields are written component after component.

CSV layout: one node per row, coordinate columns (x, y, z) first, then the
value column(s).
"""

from pathlib import Path
from typing import Sequence, Tuple, Union

import numpy as np
import pandas as pd

from ..exceptions import ShapeMismatchError
from .models import GridSpec

AXIS_NAMES = ("x", "y", "z")
FLOAT_FORMAT = "%.17g"

PathLike = Union[str, Path]


def write_field_binary(path: PathLike, values: np.ndarray, grid: GridSpec) -> Path:
    grid.check_shape(values)
    path = Path(path)
    header = " ".join([str(grid.dim), repr(float(grid.h))] + [str(n) for n in grid.shape])
    with open(path, "wb") as f:
        f.write((header + "\n").encode("ascii"))
        f.write(np.ascontiguousarray(values, dtype="<f8").tobytes(order="C"))
    return path


def read_field_binary(path: PathLike) -> Tuple[np.ndarray, int, float]:
    """Returns (values, dim, h); leading component axes are restored from the size."""
    with open(path, "rb") as f:
        header = f.readline().decode("ascii").split()
        payload = f.read()
    dim, h = int(header[0]), float(header[1])
    shape = tuple(int(n) for n in header[2:])
    if len(shape) != dim:
        raise ShapeMismatchError(f"header declares dim={dim} but {len(shape)} axis sizes")
    values = np.frombuffer(payload, dtype="<f8").astype(np.float64)
    nodes = int(np.prod(shape))
    if values.size % nodes:
        raise ShapeMismatchError(f"payload of {values.size} values is not a multiple of {nodes}")
    ncomp = values.size // nodes
    values = values.reshape((ncomp,) + shape if ncomp > 1 else shape)
    return values, dim, h


def field_frame(values: np.ndarray, grid: GridSpec, names: Sequence[str] = ()) -> pd.DataFrame:
    grid.check_shape(values)
    columns = {AXIS_NAMES[a]: grid.coordinates[a].ravel() for a in range(grid.dim)}
    comps = values.reshape((-1,) + grid.shape)
    if not names:
        names = ["value"] if comps.shape[0] == 1 else [f"u{i + 1}" for i in range(comps.shape[0])]
    for name, comp in zip(names, comps):
        columns[name] = comp.ravel()
    return pd.DataFrame(columns)


def write_field_csv(path: PathLike, values: np.ndarray, grid: GridSpec, names: Sequence[str] = ()) -> Path:
    path = Path(path)
    field_frame(values, grid, names).to_csv(path, index=False, float_format=FLOAT_FORMAT)
    return path
