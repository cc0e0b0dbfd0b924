"""
Result types for boundary measurements, energy ledgers and the recovery
experiment.
"""

from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

import numpy as np
import pandas as pd

from ..domain.io import AXIS_NAMES
from ..domain.models import _frozen_copy


@dataclass(frozen=True, eq=False)
class BoundaryTrace:
    """
    Values on the measurement surface, shaped (levels, ncomp, nodes).

    ``coordinates`` holds one array per axis with the node positions in the
    row-major order of the grid; ``surface_measure`` is h^(d-1).
    """

    samples: np.ndarray
    times: np.ndarray
    coordinates: Tuple[np.ndarray, ...]
    surface_measure: float

    def __post_init__(self):
        samples = _frozen_copy(self.samples)
        if not np.all(np.isfinite(samples)):
            raise ValueError("boundary trace contains non-finite values")
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "times", _frozen_copy(self.times))

    @property
    def n_nodes(self) -> int:
        return self.samples.shape[-1]

    def with_samples(self, samples: np.ndarray) -> "BoundaryTrace":
        return BoundaryTrace(samples, self.times, self.coordinates, self.surface_measure)

    def __sub__(self, other: "BoundaryTrace") -> "BoundaryTrace":
        return self.with_samples(self.samples - other.samples)

    def scaled(self, alpha: float) -> "BoundaryTrace":
        return self.with_samples(alpha * self.samples)

    def to_frame(self) -> pd.DataFrame:
        """One row per (level, node): t, node coordinates, u1..u3."""
        levels, ncomp, nodes = self.samples.shape
        columns = {"t": np.repeat(self.times, nodes)}
        for axis, coords in enumerate(self.coordinates):
            columns[AXIS_NAMES[axis]] = np.tile(coords, levels)
        for i in range(ncomp):
            columns[f"u{i + 1}"] = self.samples[:, i, :].ravel()
        return pd.DataFrame(columns)


@dataclass(frozen=True, eq=False)
class EnergyLedger:
    """
    Per-level energies of one scalar component:
      E_plain    = 1/2 (|grad u|^2 + |u_t|^2)
      E_weighted = 1/2 (c^2 |grad u|^2 + |u_t|^2)
    The gradient parts are kept separately for the m0/m1 sandwich.
    """

    times: np.ndarray
    E_plain: np.ndarray
    E_weighted: np.ndarray
    grad_plain: np.ndarray
    grad_weighted: np.ndarray
    bound_curve: Optional[np.ndarray] = None

    def to_frame(self) -> pd.DataFrame:
        bound = self.bound_curve if self.bound_curve is not None else np.full_like(self.times, np.nan)
        return pd.DataFrame(
            {
                "t": self.times,
                "E_plain": self.E_plain,
                "E_weighted": self.E_weighted,
                "bound": bound,
            }
        )


@dataclass(frozen=True, eq=False)
class HigherOrderLedger:
    """
    Per-level terms of the order-k a priori bound of one scalar component:
      norm  = ||u||_H^k + ||u_t||_H^(k-1)
      lower = ||u||_H^(k-1) + ||u_t||_H^(k-2)
      data  = ||u0||_H^k + ||u1||_H^(k-1) + ||f||_L2([0,t]; H^(k-1))
    """

    times: np.ndarray
    order: int
    norm: np.ndarray
    lower: np.ndarray
    data: np.ndarray
    bound_curve: Optional[np.ndarray] = None

    def to_frame(self) -> pd.DataFrame:
        bound = self.bound_curve if self.bound_curve is not None else np.full_like(self.times, np.nan)
        return pd.DataFrame(
            {
                "t": self.times,
                "norm": self.norm,
                "lower": self.lower,
                "data": self.data,
                "bound": bound,
            }
        )


@dataclass(frozen=True)
class GronwallReport:
    passed: bool
    max_ratio: float
    C: float
    A_tilde: float
    data_norm: float
    worst_time: float = 0.0


@dataclass(frozen=True)
class TraceBoundReport:
    """Fitted trace constant: the mean of the per-member ratios and their spread about it."""

    passed: bool
    constant: float
    ratios: Tuple[float, ...]
    max_deviation: float
    tolerance: float = 0.2


@dataclass(frozen=True, eq=False)
class RecoveryReport:
    """
    Per-epsilon discrepancies ||L(eps) - Lambda_lin F1|| on the measurement
    surface, the fitted rate, and the error of the extrapolated estimate.
    Failed solves are listed in ``failures`` with their diagnostics.
    """

    epsilons: Tuple[float, ...]
    errors: Tuple[float, ...]
    rate: Optional[float]
    estimate_error: Optional[float]
    best_single_error: Optional[float]
    failures: Dict[float, str] = field(default_factory=dict)

    @property
    def complete(self) -> bool:
        return not self.failures

    @property
    def extrapolation_helps(self) -> bool:
        if self.estimate_error is None or self.best_single_error is None:
            return False
        return self.estimate_error <= self.best_single_error

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "epsilon": list(self.epsilons),
                "error": list(self.errors),
                "failed": [eps in self.failures for eps in self.epsilons],
            }
        )
