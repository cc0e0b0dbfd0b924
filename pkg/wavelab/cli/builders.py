"""
Turn a validated config into grids, speeds, sources and lifespan models.
"""

import math
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Tuple

from ..domain.grid import make_grid
from ..domain.io import read_field_binary
from ..domain.models import GridSpec, SpeedField
from ..domain.speeds import (
    constant_speed,
    herglotz_bump_speed,
    radial_decay_speed,
    speed_from_values,
)
from ..exceptions import ConfigError, ShapeMismatchError, SourceDataError, SpeedError
from ..linear.models import SourceData, SpeedSystem
from ..linear.solver import check_cfl
from ..linear.sources import gaussian_pulse_source, standing_mode_source, zero_source
from ..logging_config import get_logger
from ..nonlinear.models import LifespanModel
from .config import ExperimentConfig, GridSection, LifespanSection, SourceSection, SpeedSection

logger = get_logger(__name__)


def build_grid(section: GridSection, c_max: float = 1.0) -> GridSpec:
    return make_grid(
        section.dim,
        section.extent(section.outer),
        section.extent(section.inner),
        section.h,
        section.T,
        section.stability_factor,
        c_max,
    )


def _speed_from_file(path: Path, section: SpeedSection, grid: GridSpec) -> SpeedField:
    if not path.is_file():
        raise ConfigError(f"speed profile '{path}' is neither a builtin {list(SPEED_BUILDERS)} nor a file")
    try:
        values, dim, h = read_field_binary(path)
    except (OSError, ValueError, IndexError, ShapeMismatchError) as exc:
        raise ConfigError(f"cannot read speed file {path}: {exc}") from None
    if dim != grid.dim or not math.isclose(h, grid.h, rel_tol=1e-9):
        raise ConfigError(f"speed file {path} has dim={dim}, h={h:g}; the grid has dim={grid.dim}, h={grid.h:g}")
    if values.shape != grid.shape:
        raise ConfigError(f"speed file {path} holds {values.shape} values, the grid has {grid.shape}")
    return speed_from_values(values, grid, section.R, name=path.stem)


SPEED_BUILDERS = {
    "constant": lambda s, grid: constant_speed(grid, s.level, s.R),
    "herglotz-bump": lambda s, grid: herglotz_bump_speed(grid, s.amplitude, s.radius, s.center),
    "radial-decay": lambda s, grid: radial_decay_speed(grid, s.R),
}


def build_speed(profile: str, section: SpeedSection, grid: GridSpec) -> SpeedField:
    """One speed field from a builtin name or a binary field file."""
    builder = SPEED_BUILDERS.get(profile)
    if builder is None:
        return _speed_from_file(Path(profile), section, grid)
    try:
        return builder(section, grid)
    except SpeedError as exc:
        raise ConfigError(f"speed profile '{profile}': {exc}") from None


def build_source(section: SourceSection, grid: GridSpec) -> SourceData:
    """F1 for the configured recipe, carrying epsilon = 1."""
    if len(section.weights) not in (1, 3):
        raise ConfigError(f"source.weights needs 1 or 3 values, got {len(section.weights)}")
    if len(section.mode) not in (1, grid.dim):
        raise ConfigError(f"source.mode needs 1 or {grid.dim} values, got {len(section.mode)}")
    if section.center is not None and len(section.center) != grid.dim:
        raise ConfigError(f"source.center needs {grid.dim} values, got {len(section.center)}")
    try:
        if section.recipe == "standing-mode":
            mode = section.mode[0] if len(section.mode) == 1 else section.mode
            return standing_mode_source(grid, mode, section.weights, section.norm)
        if section.recipe == "gaussian-pulse":
            return gaussian_pulse_source(grid, section.center, section.width, section.weights, section.norm)
        return zero_source(grid)
    except SourceDataError as exc:
        raise ConfigError(f"source recipe '{section.recipe}': {exc}") from None


def build_lifespan_model(section: LifespanSection, sys: SpeedSystem) -> LifespanModel:
    """
    With the energy route the model comes from the speeds; without it only
    the logarithmic condition is used.
    """
    if section.energy_route:
        return LifespanModel.from_speeds(sys, section.C1, section.T_ref, section.C_s, section.C_s_prime)
    return LifespanModel(
        C_s=sys.c1_norm() if section.C_s is None else section.C_s,
        C_s_prime=math.log(1.0 + section.T_ref) if section.C_s_prime is None else section.C_s_prime,
    )


@dataclass(frozen=True, eq=False)
class ExperimentInputs:
    """Everything an experiment needs, built once from its config"""

    config: ExperimentConfig
    grid: GridSpec
    speeds: Tuple[SpeedField, ...]
    source: SourceData

    @cached_property
    def system(self) -> SpeedSystem:
        try:
            return SpeedSystem(self.speeds, self.grid)
        except SpeedError as exc:
            raise ConfigError(str(exc)) from None

    @cached_property
    def lifespan_model(self) -> LifespanModel:
        return build_lifespan_model(self.config.lifespan, self.system)


def build_inputs(config: ExperimentConfig, require_system: bool = True) -> ExperimentInputs:
    """
    The grid time step is stable for the fastest configured speed unless
    grid.c_max pins it; a pinned step that is too large raises StabilityError.
    """
    spatial = build_grid(config.grid)
    speeds = tuple(build_speed(p, config.speed, spatial) for p in config.speed.component_profiles())
    fastest = max(math.sqrt(field.m1) for field in speeds)
    if config.run.discriminate:
        fastest = max(fastest, math.sqrt(1.0 + max(config.run.bump_amplitude, 0.0)))
    grid = build_grid(config.grid, config.grid.c_max or fastest)
    check_cfl(grid, fastest)

    inputs = ExperimentInputs(config, grid, speeds, build_source(config.source, grid))
    if require_system:
        logger.debug(f"speed system admissible, c_max={inputs.system.c_max:.6g}")
    logger.info(
        f"{config.experiment.name}: grid {grid.shape}, h={grid.h:g}, dt={grid.dt:.6g}, "
        f"profiles {config.speed.component_profiles()}, source {config.source.recipe}"
    )
    return inputs
