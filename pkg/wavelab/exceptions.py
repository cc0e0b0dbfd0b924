"""
Exception hierarchy for wavelab.

Every failure a solver, checker or the experiment runner can raise derives from
WavelabError; the CLI maps each family onto one exit code.
"""

from typing import Optional


class WavelabError(Exception):
    """Base class for all wavelab errors"""

    exit_code = 1


class GridError(WavelabError):
    """Invalid discretization parameters"""

    exit_code = 2


class ShapeMismatchError(WavelabError):
    """A sampled field does not match the grid it is used with"""


class UnsupportedOrderError(WavelabError):
    """Discrete Sobolev order outside 0..3"""


class SpeedError(WavelabError):
    """A sound speed violates the admissible class or cannot be sampled"""


class SourceDataError(WavelabError):
    """Source data incompatible with the Dirichlet condition or the admissible class"""


class ConfigError(WavelabError):
    """Experiment configuration could not be parsed or validated"""

    exit_code = 2

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class StabilityError(WavelabError):
    """The time step violates the CFL bound of the explicit scheme"""

    exit_code = 3

    def __init__(self, courant: float, limit: float = 1.0):
        self.courant = courant
        self.limit = limit
        super().__init__(
            f"CFL violation: courant number {courant:.6g} exceeds {limit:.6g}"
        )


class DivergenceError(WavelabError):
    """Non-finite values appeared while stepping"""

    exit_code = 4

    def __init__(self, step: int, component: Optional[int] = None, detail: str = ""):
        self.step = step
        self.component = component
        where = f"step {step}"
        if component is not None:
            where += f", component {component}"
        super().__init__(f"solution diverged at {where}" + (f": {detail}" if detail else ""))


class BlowUpError(DivergenceError):
    """The nonlinear solution left the small-data regime"""


class ConvergenceError(WavelabError):
    """A fit or iteration could not be carried out"""

    exit_code = 5


class ExperimentError(WavelabError):
    """An experiment could not be assembled from its configuration"""

    exit_code = 5
