"""
Types for the coupled semi-linear system u_tt - c_i^2 Lap u_i = |u|^2 + f_i.
"""

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from ..domain.models import GridSpec
from ..exceptions import SourceDataError, WavelabError
from ..linear.models import SourceData, SpeedSystem

NONLINEARITIES = ("abs_square",)
BLOWUP_FACTOR = 1e3

EnergyTable = Tuple[Sequence[float], Sequence[float]]
EnergyConstant = Union[Callable[[float], float], EnergyTable, None]


def abs_square(u: np.ndarray) -> np.ndarray:
    """N(u, u) = (|u|^2, |u|^2, |u|^2) nodewise."""
    sq = np.sum(u * u, axis=0)
    return np.broadcast_to(sq, u.shape)


@dataclass(frozen=True, eq=False)
class NonlinearProblem:
    """
    One instance of the coupled system on ``grid``.

    ``coupling`` multiplies the nonlinear term; it is 1 for the system under
    study and 0 turns the solver into the linear one.
    """

    sys: SpeedSystem
    F: SourceData
    grid: GridSpec
    nonlinearity: str = "abs_square"
    coupling: float = 1.0

    def __post_init__(self):
        if self.nonlinearity not in NONLINEARITIES:
            raise WavelabError(f"unknown nonlinearity '{self.nonlinearity}'")
        if not 0.0 < self.F.epsilon < 1.0:
            raise SourceDataError(f"epsilon must lie in (0, 1), got {self.F.epsilon}")

    @property
    def epsilon(self) -> float:
        return self.F.epsilon

    @property
    def blowup_threshold(self) -> float:
        return BLOWUP_FACTOR / self.epsilon

    def nonlinear_term(self, u: np.ndarray) -> np.ndarray:
        if self.coupling == 1.0:
            return abs_square(u)
        return self.coupling * abs_square(u)

    def with_epsilon(self, epsilon: float) -> "NonlinearProblem":
        return NonlinearProblem(
            self.sys, self.F.with_epsilon(epsilon), self.grid, self.nonlinearity, self.coupling
        )


def energy_constant(T: float, C1: float = 1.0, A1: float = 1.0) -> float:
    """D1(T) = C1 (1 + T + (1 + A1 T) e^{A1 T}) e^{A1 T}."""
    growth = math.exp(A1 * T)
    return C1 * (1.0 + T + (1.0 + A1 * T) * growth) * growth


@dataclass(frozen=True)
class LifespanModel:
    """
    Constants of the lifespan condition C_s T < log(1/(3 eps)) - C_s'.

    ``D1`` is the energy constant D1(T), either a callable or a table
    (times, values) that is interpolated linearly.
    """

    C_s: float
    C_s_prime: float = math.log(2.0)
    D1: EnergyConstant = field(default=None, compare=False)

    def __post_init__(self):
        if not self.C_s > 0:
            raise ValueError(f"C_s must be positive, got {self.C_s}")

    @classmethod
    def from_speeds(
        cls,
        sys: SpeedSystem,
        C1: float = 1.0,
        T_ref: float = 1.0,
        C_s: Optional[float] = None,
        C_s_prime: Optional[float] = None,
    ) -> "LifespanModel":
        """
        Default constants: C_s = A1, the discrete C^1 norm of the c_i^2,
        C_s' = log(1 + T_ref) and D1 = energy_constant at rate A1. Explicit
        C_s or C_s' take precedence.
        """
        a_tilde = sys.c1_norm()
        return cls(
            C_s=a_tilde if C_s is None else C_s,
            C_s_prime=math.log(1.0 + T_ref) if C_s_prime is None else C_s_prime,
            D1=lambda T: energy_constant(T, C1, a_tilde),
        )

    def energy_constant(self, T: float) -> Optional[float]:
        if self.D1 is None:
            return None
        if callable(self.D1):
            return float(self.D1(T))
        times, values = self.D1
        return float(np.interp(T, np.asarray(times, dtype=float), np.asarray(values, dtype=float)))

    def to_dict(self):
        return {"C_s": self.C_s, "C_s_prime": self.C_s_prime, "has_D1": self.D1 is not None}


@dataclass(frozen=True)
class LifespanEstimate:
    """T_max and the two routes it is taken from; ``guaranteed`` is false when T_max is 0."""

    epsilon: float
    T_max: float
    T_log: float
    T_energy: Optional[float] = None

    @property
    def guaranteed(self) -> bool:
        return self.T_max > 0.0


@dataclass(frozen=True)
class DiameterReport:
    passed: bool
    epsilon: float
    diameter: float
    euclidean_diameter: float
    slowest_speed: float
    T_max: float


@dataclass(frozen=True)
class PicardReport:
    """
    Residuals ||W^n - W^{n-1}||_S for n = 1.. and the geometric-mean
    contraction ratio, measured from ||W^0||_S.
    """

    iterates: int
    residuals: Tuple[float, ...]
    converged: bool
    contraction_ratio: float
    linear_norm: float = 0.0

    def ratios(self) -> Tuple[float, ...]:
        previous = (self.linear_norm,) + self.residuals[:-1]
        return tuple(r / p if p > 0 else 0.0 for r, p in zip(self.residuals, previous))

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "iteration": np.arange(1, len(self.residuals) + 1),
                "residual": np.asarray(self.residuals, dtype=float),
                "ratio": np.asarray(self.ratios(), dtype=float),
            }
        )


@dataclass(frozen=True)
class NormBoundReport:
    passed: bool
    norm: float
    linear_norm: float
    tolerance: float
