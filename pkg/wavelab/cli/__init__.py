"""
Experiment runner: flat key-value configs, named experiments and CSV artifacts.
"""

from .builders import ExperimentInputs, build_inputs
from .config import ExperimentConfig, format_config, load_config, parse_config
from .experiments import EXPERIMENTS
from .main import main
from .models import Criterion, ExperimentResult
from .runner import run

__all__ = [
    "ExperimentConfig",
    "ExperimentInputs",
    "ExperimentResult",
    "Criterion",
    "EXPERIMENTS",
    "parse_config",
    "load_config",
    "format_config",
    "build_inputs",
    "run",
    "main",
]
