"""
Prometheus metrics collection for wavelab.
Counts solver work so that long sweeps can be monitored or scraped.
"""

from typing import Optional

from prometheus_client import Counter, Gauge, Histogram, Info

from .logging_config import log_metrics

# Application Info
app_info = Info("wavelab_info", "Application information")
app_info.info({"version": "1.0.0", "service": "wavelab"})

# Solver Metrics
SOLVES_STARTED = Counter(
    "wavelab_solves_started_total",
    "Total number of time-stepping solves started",
    ["kind"],
)

SOLVES_FAILED = Counter(
    "wavelab_solves_failed_total",
    "Total number of solves aborted by a guard",
    ["kind", "reason"],
)

LEAPFROG_STEPS = Counter(
    "wavelab_leapfrog_steps_total",
    "Total number of leapfrog steps taken",
    ["kind"],
)

SOLVE_LATENCY = Histogram(
    "wavelab_solve_duration_seconds",
    "Solve duration in seconds",
    ["kind"],
    buckets=[0.01, 0.05, 0.1, 0.5, 1.0, 5.0, 10.0, 60.0],
)

PICARD_ITERATIONS = Counter(
    "wavelab_picard_iterations_total",
    "Total number of Duhamel-Picard iterations",
)

# Experiment Metrics
EXPERIMENTS_RUN = Counter(
    "wavelab_experiments_total",
    "Total number of experiments run",
    ["experiment", "status"],
)

# System Metrics
MEMORY_USAGE = Gauge("wavelab_memory_usage_bytes", "Resident memory of the process")


def record_solve(kind: str, steps: int, duration: float):
    """Record a completed solve."""
    SOLVES_STARTED.labels(kind=kind).inc()
    LEAPFROG_STEPS.labels(kind=kind).inc(steps)
    SOLVE_LATENCY.labels(kind=kind).observe(duration)

    log_metrics(
        metric_name="solve_duration",
        metric_value=duration,
        tags={"kind": kind, "steps": steps},
    )


def record_solve_failure(kind: str, reason: str):
    """Record a solve stopped by the stability or divergence guard."""
    SOLVES_FAILED.labels(kind=kind, reason=reason).inc()


def record_picard_iteration(residual: Optional[float] = None):
    """Record one Picard iteration."""
    PICARD_ITERATIONS.inc()
    if residual is not None:
        log_metrics("picard_residual", residual)


def record_experiment(experiment: str, status: str):
    """Record an experiment outcome."""
    EXPERIMENTS_RUN.labels(experiment=experiment, status=status).inc()


def update_system_metrics():
    """Update process-level metrics."""
    import psutil

    rss = psutil.Process().memory_info().rss
    MEMORY_USAGE.set(rss)
    log_metrics("memory_rss_bytes", float(rss))
