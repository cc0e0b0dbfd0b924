"""
Experiment configuration.

Configs are flat text, one ``section.key = value`` per line, ``#`` starts a
comment. Lists are comma separated. Every section is validated by a pydantic
model; unknown keys, type mismatches and missing required keys are reported
with the line they occur on.
"""

from pathlib import Path
from typing import Annotated, Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, ValidationError, field_validator

from ..exceptions import ConfigError

ExperimentName = Literal[
    "validate",
    "linear-convergence",
    "energy",
    "coupled",
    "picard",
    "parametrix-sweep",
    "recover-lambda",
    "lifespan",
    "herglotz",
]

SPEED_BUILTINS = ("constant", "herglotz-bump", "radial-decay")


def _split(value):
    if isinstance(value, str):
        return [item.strip() for item in value.split(",") if item.strip()]
    return value


FloatList = Annotated[List[float], BeforeValidator(_split)]
IntList = Annotated[List[int], BeforeValidator(_split)]
StrList = Annotated[List[str], BeforeValidator(_split)]


class Section(BaseModel):
    """Base class for config sections"""

    model_config = ConfigDict(frozen=True, extra="forbid")


class ExperimentSection(Section):
    """Which experiment to run and the seed of any randomized ensemble"""

    name: ExperimentName
    seed: int = Field(0, ge=0)


class GridSection(Section):
    """Nested boxes and the discretization; one interval applies to every axis"""

    dim: int = Field(ge=1, le=3)
    h: float = Field(gt=0)
    T: float = Field(1.0, gt=0)
    outer: FloatList = Field(default_factory=lambda: [0.0, 1.0])
    inner: FloatList = Field(default_factory=lambda: [0.25, 0.75])
    stability_factor: float = Field(0.9, gt=0, le=1)
    c_max: Optional[float] = Field(None, gt=0)

    @field_validator("outer", "inner")
    @classmethod
    def _extent_length(cls, value, info):
        dim = info.data.get("dim")
        allowed = (2,) if dim is None else (2, 2 * dim)
        if len(value) not in allowed:
            raise ValueError(f"expected {' or '.join(str(n) for n in sorted(set(allowed)))} numbers")
        return value

    def extent(self, values: List[float]) -> List[Tuple[float, float]]:
        pairs = [(values[i], values[i + 1]) for i in range(0, len(values), 2)]
        return pairs * self.dim if len(pairs) == 1 else pairs


class SpeedSection(Section):
    """
    Builtin profile name or path to a binary c^2 field, shared by the three
    components unless ``profiles`` names one per component.
    """

    profile: str = "constant"
    profiles: Optional[StrList] = None
    level: float = Field(1.0, gt=0)
    amplitude: float = 0.1
    radius: float = Field(0.25, gt=0)
    center: Optional[FloatList] = None
    R: Optional[float] = Field(None, gt=0)

    @field_validator("profiles")
    @classmethod
    def _three_profiles(cls, value):
        if value is not None and len(value) != 3:
            raise ValueError(f"expected 3 profiles, got {len(value)}")
        return value

    def component_profiles(self) -> Tuple[str, str, str]:
        if self.profiles is not None:
            return tuple(self.profiles)
        return (self.profile,) * 3


class SourceSection(Section):
    recipe: Literal["standing-mode", "gaussian-pulse", "zero"] = "standing-mode"
    mode: IntList = Field(default_factory=lambda: [1])
    weights: FloatList = Field(default_factory=lambda: [1.0, 1.0, 1.0])
    center: Optional[FloatList] = None
    width: float = Field(0.1, gt=0)
    norm: Optional[float] = Field(None, gt=0)


class RunSection(Section):
    """Solver and sweep parameters; components are numbered from 0"""

    epsilon: float = Field(0.01, gt=0, lt=1)
    epsilon_list: Optional[FloatList] = None
    h_list: Optional[FloatList] = None
    problem: Literal["standing-wave", "manufactured"] = "standing-wave"
    tol: float = Field(1e-10, gt=0)
    max_iter: int = Field(50, ge=1)
    coupling: float = 1.0
    component: int = Field(0, ge=0, le=2)
    energy_order: int = Field(2, ge=2, le=3)
    members: int = Field(8, ge=1)
    dr: float = Field(1e-3, gt=0)
    discriminate: bool = False
    bump_component: int = Field(1, ge=0, le=2)
    bump_amplitude: float = 0.1
    bump_radius: float = Field(0.25, gt=0)

    @field_validator("epsilon_list")
    @classmethod
    def _strictly_decreasing(cls, value):
        if value is None:
            return value
        if not value:
            raise ValueError("epsilon_list is empty")
        if any(not 0.0 < eps < 1.0 for eps in value):
            raise ValueError("every epsilon must lie in (0, 1)")
        if any(b >= a for a, b in zip(value, value[1:])):
            raise ValueError("epsilon_list must be strictly decreasing")
        return value

    @field_validator("h_list")
    @classmethod
    def _positive_spacings(cls, value):
        if value is not None and any(h <= 0 for h in value):
            raise ValueError("spacings must be positive")
        return value


class LifespanSection(Section):
    """Constants of the lifespan condition; unset values come from the speeds"""

    C_s: Optional[float] = Field(None, gt=0)
    C_s_prime: Optional[float] = None
    C1: float = Field(1.0, gt=0)
    T_ref: float = Field(1.0, ge=0)
    energy_route: bool = True
    expected_T_max: Optional[float] = Field(None, ge=0)


class OutputSection(Section):
    dir: str = "wavelab-out"
    trajectory: bool = False


class ExperimentConfig(BaseModel):
    """A fully validated experiment"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    experiment: ExperimentSection
    grid: GridSection
    speed: SpeedSection = Field(default_factory=SpeedSection)
    source: SourceSection = Field(default_factory=SourceSection)
    run: RunSection = Field(default_factory=RunSection)
    lifespan: LifespanSection = Field(default_factory=LifespanSection)
    output: OutputSection = Field(default_factory=OutputSection)


SECTIONS = {
    "experiment": ExperimentSection,
    "grid": GridSection,
    "speed": SpeedSection,
    "source": SourceSection,
    "run": RunSection,
    "lifespan": LifespanSection,
    "output": OutputSection,
}


def _section_error(section: str, exc: ValidationError, lines: Dict[Tuple[str, str], int]) -> ConfigError:
    first = exc.errors()[0]
    field = str(first["loc"][0]) if first["loc"] else ""
    key = f"{section}.{field}" if field else section
    kind = first["type"]
    if kind == "missing":
        return ConfigError(f"missing required key '{key}'")
    if kind == "extra_forbidden":
        return ConfigError(f"unknown key '{key}'", lines.get((section, field)))
    return ConfigError(f"invalid value for '{key}': {first['msg']}", lines.get((section, field)))


def parse_config(text: str) -> ExperimentConfig:
    """Parse and validate config text; the first problem found is raised as ConfigError."""
    raw: Dict[str, Dict[str, str]] = {}
    lines: Dict[Tuple[str, str], int] = {}
    for number, line in enumerate(text.splitlines(), start=1):
        content = line.split("#", 1)[0].strip()
        if not content:
            continue
        if "=" not in content:
            raise ConfigError("expected 'section.key = value'", number)
        key, value = (part.strip() for part in content.split("=", 1))
        section, dot, name = key.partition(".")
        if not (dot and section and name):
            raise ConfigError(f"key '{key}' is not of the form section.key", number)
        if section not in SECTIONS:
            raise ConfigError(f"unknown section '{section}'", number)
        entries = raw.setdefault(section, {})
        if name in entries:
            raise ConfigError(f"duplicate key '{key}'", number)
        entries[name] = value
        lines[(section, name)] = number

    sections = {}
    for section, model in SECTIONS.items():
        try:
            sections[section] = model(**raw.get(section, {}))
        except ValidationError as exc:
            raise _section_error(section, exc, lines) from None
    return ExperimentConfig(**sections)


def load_config(path: Union[str, Path]) -> ExperimentConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from None
    return parse_config(text)


def _format_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (list, tuple)):
        return ", ".join(_format_value(v) for v in value)
    return str(value)


def format_config(config: ExperimentConfig) -> str:
    """Config text that parses back to an equal config; unset optional keys are left out."""
    out = []
    for section in SECTIONS:
        model = getattr(config, section)
        for name in type(model).model_fields:
            value = getattr(model, name)
            if value is not None:
                out.append(f"{section}.{name} = {_format_value(value)}")
    return "\n".join(out) + "\n"
