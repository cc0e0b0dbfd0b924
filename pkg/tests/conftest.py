"""
Pytest configuration and fixtures for the wavelab acceptance tests.

The acceptance tests drive complete experiments through the runner, so the
fixtures here write config files into a temporary directory and read the
artifacts back.
"""

import os
from pathlib import Path
from typing import Callable, Dict, Tuple

import pytest

from wavelab.cli.config import parse_config
from wavelab.cli.runner import run
from wavelab.logging_config import setup_logging

# Test configuration
TEST_CONFIG = {
    "threads": int(os.getenv("WAVELAB_TEST_THREADS", "2")),
    "log_level": os.getenv("WAVELAB_TEST_LOG_LEVEL", "WARNING"),
}

Summary = Dict[str, Tuple[float, str, str]]


def read_summary(out: Path) -> Summary:
    """summary.txt as {criterion: (value, threshold, status)}."""
    rows = {}
    for line in (out / "summary.txt").read_text(encoding="utf-8").splitlines():
        name, value, threshold, status = line.split(", ")
        rows[name] = (float(value), threshold, status)
    return rows


@pytest.fixture(scope="session", autouse=True)
def quiet_logging():
    setup_logging(TEST_CONFIG["log_level"])
    yield


@pytest.fixture
def run_experiment(tmp_path) -> Callable[..., Tuple[int, Path, Summary]]:
    """Run config text through the runner; returns (exit status, out dir, summary)."""

    def _run(text: str, out: str = "out", threads=None):
        directory = tmp_path / out
        code = run(parse_config(text), directory, threads or TEST_CONFIG["threads"])
        summary = read_summary(directory) if (directory / "summary.txt").exists() else {}
        return code, directory, summary

    return _run


# Pytest configuration
def pytest_configure(config):
    """Configure pytest with custom markers."""
    config.addinivalue_line("markers", "acceptance: end-to-end check of one experiment")
    config.addinivalue_line("markers", "slow: mark test as slow running")
    config.addinivalue_line("markers", "integration: mark test as integration test")


def pytest_collection_modifyitems(config, items):
    """Modify test collection to add markers based on test location."""
    for item in items:
        # Everything under tests/ runs whole experiments
        if "tests" in Path(str(item.fspath)).parts:
            item.add_marker(pytest.mark.acceptance)
            item.add_marker(pytest.mark.integration)
