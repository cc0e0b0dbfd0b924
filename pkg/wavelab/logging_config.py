"""
Centralized logging configuration for wavelab.
Provides structured logging with Loguru for solvers, sweeps and the CLI.
"""

import os
import sys
from pathlib import Path
from typing import Optional

from loguru import logger

CONSOLE_FORMAT = (
    "<green>{time:YYYY-MM-DD HH:mm:ss}</green> | <level>{level: <8}</level> | "
    "<cyan>{extra[module]}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> - "
    "<level>{message}</level>"
)
FILE_FORMAT = "{time:YYYY-MM-DD HH:mm:ss} | {level} | {extra[module]}:{function}:{line} | {message}"


def setup_logging(
    log_level: str = "INFO", log_dir: Optional[Path] = None, colorize: bool = True
):
    """Configure logging for the entire application."""

    logger.remove()
    logger.configure(extra={"module": "wavelab"})

    # Console goes to stderr so that stdout stays free for machine output
    logger.add(
        sys.stderr,
        format=CONSOLE_FORMAT,
        level=log_level,
        colorize=colorize,
        backtrace=False,
        diagnose=False,
    )

    if log_dir is not None:
        log_dir = Path(log_dir)
        log_dir.mkdir(parents=True, exist_ok=True)

        logger.add(
            log_dir / "wavelab.log",
            format=FILE_FORMAT,
            level=log_level,
            rotation="10 MB",
            retention=5,
            encoding="utf-8",
        )

        logger.add(
            log_dir / "errors.log",
            format=FILE_FORMAT + " | {exception}",
            level="ERROR",
            rotation="10 MB",
            retention=5,
            encoding="utf-8",
            backtrace=True,
        )

    # Custom level for solver metrics; it survives repeated setup calls
    try:
        logger.level("METRICS")
    except ValueError:
        logger.level("METRICS", no=26, color="<blue>")

    return logger


# Global logger instance
app_logger = setup_logging(os.getenv("WAVELAB_LOG_LEVEL", "WARNING"))


def add_file_sink(path: Path, log_level: str = "DEBUG") -> int:
    """Attach a plain-text sink for one run; returns the id to remove it with."""
    return logger.add(Path(path), format=FILE_FORMAT, level=log_level, encoding="utf-8")


def remove_sink(sink_id: int) -> None:
    logger.remove(sink_id)


def get_logger(name: str):
    """Get a logger instance for a specific module."""
    return logger.bind(module=name)


def log_metrics(metric_name: str, metric_value: float, tags: Optional[dict] = None):
    """Log metrics with structured data."""
    logger.bind(
        module="metrics", metric_name=metric_name, metric_value=metric_value, tags=tags or {}
    ).log("METRICS", f"Metric: {metric_name} = {metric_value}")


def log_experiment_event(experiment: str, event: str, data: Optional[dict] = None):
    """Log an experiment lifecycle event with structured data."""
    logger.bind(module="experiments", experiment=experiment, event_data=data or {}).info(
        f"Experiment {experiment}: {event}"
    )
