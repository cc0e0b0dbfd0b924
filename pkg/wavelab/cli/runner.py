"""
Experiment runner: builds the inputs, runs one named experiment and writes
its artifacts.

Artifacts in the output directory:
  <frame>.csv   one file per table, fixed column order, 17 significant digits
  summary.txt   one line per criterion: name, value, threshold, pass|fail
  config.txt    the validated config, re-emitted
  wavelab.log   the run log (not part of the deterministic artifacts)

Nothing is written when the config cannot be turned into inputs.
"""

import sys
import time
from pathlib import Path
from typing import Optional, Union

from ..analysis.io import write_frame_csv
from ..error_tracking import capture_exception
from ..exceptions import DivergenceError, StabilityError, WavelabError
from ..logging_config import add_file_sink, get_logger, log_experiment_event, remove_sink
from ..metrics import record_experiment, update_system_metrics
from .builders import ExperimentInputs, build_inputs
from .config import ExperimentConfig, format_config
from .experiments import EXPERIMENTS, SPEED_REPORTING
from .models import ExperimentResult

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_CONFIG = 2
EXIT_STABILITY = 3
EXIT_BLOWUP = 4
EXIT_CRITERION = 5

SUMMARY_FILE = "summary.txt"
CONFIG_FILE = "config.txt"
LOG_FILE = "wavelab.log"


def exit_code_for(exc: BaseException) -> int:
    if isinstance(exc, StabilityError):
        return EXIT_STABILITY
    if isinstance(exc, DivergenceError):
        return EXIT_BLOWUP
    if isinstance(exc, WavelabError):
        return exc.exit_code
    return EXIT_ERROR


def diagnose(kind: str, exc: BaseException) -> None:
    """One-line diagnostic on stderr."""
    print(f"wavelab: {kind}: {exc}", file=sys.stderr)


def write_artifacts(result: ExperimentResult, config: ExperimentConfig, out: Path) -> None:
    for name in sorted(result.frames):
        path = write_frame_csv(out / f"{name}.csv", result.frames[name])
        logger.debug(f"wrote {path}")
    (out / SUMMARY_FILE).write_text(result.summary(), encoding="utf-8")
    (out / CONFIG_FILE).write_text(format_config(config), encoding="utf-8")


def prepare(config: ExperimentConfig) -> ExperimentInputs:
    name = config.experiment.name
    return build_inputs(config, require_system=name not in SPEED_REPORTING)


def run(
    config: ExperimentConfig,
    out_dir: Optional[Union[str, Path]] = None,
    threads: Optional[int] = None,
) -> int:
    """Run the configured experiment; returns the process exit status."""
    name = config.experiment.name
    try:
        inputs = prepare(config)
    except StabilityError as exc:
        diagnose("stability error", exc)
        record_experiment(name, "unstable")
        return EXIT_STABILITY
    except WavelabError as exc:
        diagnose("config error", exc)
        record_experiment(name, "invalid")
        return EXIT_CONFIG

    out = Path(out_dir or config.output.dir)
    out.mkdir(parents=True, exist_ok=True)
    sink = add_file_sink(out / LOG_FILE)
    started = time.perf_counter()
    log_experiment_event(name, "started", {"out": str(out), "threads": threads})
    try:
        try:
            result = EXPERIMENTS[name](inputs, threads)
        except Exception as exc:
            code = exit_code_for(exc)
            kind = {EXIT_STABILITY: "stability error", EXIT_BLOWUP: "blow-up"}.get(code, "error")
            logger.error(f"{name} aborted ({kind}): {exc}")
            capture_exception(exc, experiment=name)
            record_experiment(name, "error")
            diagnose(kind, exc)
            return code

        write_artifacts(result, config, out)
        sys.stdout.write(result.summary())
        status = EXIT_OK if result.passed else EXIT_CRITERION
        for criterion in result.failed():
            logger.warning(f"{name}: criterion {criterion.name} failed ({criterion.value:.6g}, {criterion.threshold})")
        record_experiment(name, "passed" if status == EXIT_OK else "failed")
        update_system_metrics()
        log_experiment_event(
            name,
            "finished",
            {"status": status, "seconds": round(time.perf_counter() - started, 3)},
        )
        return status
    finally:
        remove_sink(sink)
