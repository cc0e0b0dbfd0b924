"""
Types for the two-term small-data expansion w = eps w1 + eps^2 w2.
"""

import math
from dataclasses import asdict, dataclass
from typing import Optional, Tuple

import numpy as np
import pandas as pd

from ..exceptions import ShapeMismatchError
from ..linear.models import WaveField

SWEEP_COLUMNS = ["epsilon", "err_norm", "ratio", "slope_window", "first_order_err", "bound"]


@dataclass(frozen=True, eq=False)
class ParametrixBundle:
    """
    w1 solves the linear system with data F1, w2 solves it with zero data and
    forcing N(w1, w1); w is their combination at ``epsilon``.
    """

    w1: WaveField
    w2: WaveField
    w: WaveField
    epsilon: float

    @staticmethod
    def combine(w1: np.ndarray, w2: np.ndarray, epsilon: float) -> np.ndarray:
        return epsilon * w1 + (epsilon * epsilon) * w2

    @classmethod
    def assemble(cls, w1: WaveField, w2: WaveField, epsilon: float) -> "ParametrixBundle":
        if w1.snapshots.shape != w2.snapshots.shape:
            raise ShapeMismatchError(
                f"parametrix terms differ in shape: {w1.snapshots.shape} vs {w2.snapshots.shape}"
            )
        w = WaveField(cls.combine(w1.snapshots, w2.snapshots, epsilon), w1.grid)
        return cls(w1=w1, w2=w2, w=w, epsilon=float(epsilon))

    def with_epsilon(self, epsilon: float) -> "ParametrixBundle":
        return ParametrixBundle.assemble(self.w1, self.w2, epsilon)

    def first_order(self) -> np.ndarray:
        return self.epsilon * self.w1.snapshots


@dataclass(frozen=True)
class ErrorRecord:
    """Remainder of the expansion at one epsilon, measured in the S-norm."""

    epsilon: float
    err_norm: float
    bound: Optional[float]
    ratio: float
    first_order_err: float = float("nan")

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class ParametrixSweep:
    """
    Records ordered as the epsilons were given, with the log-log slopes of
    ||u - w|| and ||u - eps w1|| against eps (None when every error vanishes).
    """

    records: Tuple[ErrorRecord, ...]
    slope: Optional[float]
    first_order_slope: Optional[float]

    @property
    def epsilons(self) -> Tuple[float, ...]:
        return tuple(r.epsilon for r in self.records)

    @property
    def ratio_spread(self) -> float:
        """max / min of err_norm / eps^3 over the sweep."""
        ratios = [r.ratio for r in self.records]
        lo = min(ratios)
        return max(ratios) / lo if lo > 0 else math.inf

    def slope_windows(self):
        """Local slope between each record and the one before it."""
        windows = [float("nan")]
        for prev, rec in zip(self.records, self.records[1:]):
            if prev.err_norm > 0 and rec.err_norm > 0:
                windows.append(
                    math.log(rec.err_norm / prev.err_norm) / math.log(rec.epsilon / prev.epsilon)
                )
            else:
                windows.append(float("nan"))
        return windows

    def to_frame(self) -> pd.DataFrame:
        rows = []
        for rec, window in zip(self.records, self.slope_windows()):
            rows.append(
                {
                    "epsilon": rec.epsilon,
                    "err_norm": rec.err_norm,
                    "ratio": rec.ratio,
                    "slope_window": window,
                    "first_order_err": rec.first_order_err,
                    "bound": float("nan") if rec.bound is None else rec.bound,
                }
            )
        return pd.DataFrame(rows, columns=SWEEP_COLUMNS)
