"""
Experiment outcomes: named pass/fail criteria plus the tables written as CSV.
"""

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import pandas as pd


def _number(value: Optional[float]) -> float:
    return float("nan") if value is None else float(value)


@dataclass(frozen=True)
class Criterion:
    name: str
    value: float
    threshold: str
    passed: bool

    def summary_line(self) -> str:
        """``name, value, threshold, pass|fail``"""
        return f"{self.name}, {self.value:.17g}, {self.threshold}, {'pass' if self.passed else 'fail'}"


@dataclass
class ExperimentResult:
    """Criteria in evaluation order and the frames keyed by artifact name."""

    experiment: str
    criteria: List[Criterion] = field(default_factory=list)
    frames: Dict[str, pd.DataFrame] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.criteria)

    def add(self, name: str, value: Optional[float], threshold: str, passed: bool) -> Criterion:
        criterion = Criterion(name, _number(value), threshold, bool(passed))
        self.criteria.append(criterion)
        return criterion

    def require(self, name: str, ok: bool) -> Criterion:
        return self.add(name, 1.0 if ok else 0.0, "==1", ok)

    def expect_failure(self, name: str, ok: bool) -> Criterion:
        """A check that is supposed to fail; the value is its pass flag."""
        return self.add(name, 1.0 if ok else 0.0, "==0", not ok)

    def within(self, name: str, value: Optional[float], lo: float, hi: float) -> Criterion:
        v = _number(value)
        return self.add(name, v, f"{lo:g}..{hi:g}", lo <= v <= hi)

    def at_most(self, name: str, value: Optional[float], limit: float) -> Criterion:
        v = _number(value)
        return self.add(name, v, f"<={limit:.6g}", v <= limit)

    def at_least(self, name: str, value: Optional[float], limit: float) -> Criterion:
        v = _number(value)
        return self.add(name, v, f">={limit:.6g}", v >= limit)

    def above(self, name: str, value: Optional[float], limit: float) -> Criterion:
        v = _number(value)
        return self.add(name, v, f">{limit:.6g}", v > limit)

    def below(self, name: str, value: Optional[float], limit: float) -> Criterion:
        v = _number(value)
        return self.add(name, v, f"<{limit:.6g}", v < limit)

    def summary(self) -> str:
        return "".join(c.summary_line() + "\n" for c in self.criteria)

    def failed(self) -> List[Criterion]:
        return [c for c in self.criteria if not c.passed]


def ratio(numerator: float, denominator: float) -> float:
    """numerator / denominator with 0/0 = 0 and x/0 = inf."""
    if denominator == 0.0:
        return 0.0 if numerator == 0.0 else math.inf
    return numerator / denominator
