"""
End-to-end experiment checks at desk scale.

Each test runs one named experiment through the runner and asserts on the
exit status and the criterion lines of summary.txt.
"""

import math

import pandas as pd
import pytest

UNIT_LINE = """
grid.dim = 1
grid.h = 0.015625
"""

UNIT_SQUARE_COARSE = """
grid.dim = 2
grid.h = 0.0625
grid.T = 0.5
"""


def assert_all_pass(code, summary):
    failed = [name for name, (_, _, status) in summary.items() if status != "pass"]
    assert failed == []
    assert code == 0


def test_linear_solver_is_second_order(run_experiment):
    code, out, summary = run_experiment("experiment.name = linear-convergence\n" + UNIT_LINE)
    assert_all_pass(code, summary)
    order = summary["convergence_order"][0]
    assert 1.8 <= order <= 2.2
    frame = pd.read_csv(out / "convergence.csv")
    assert list(frame["h"]) == [1 / 64, 1 / 128, 1 / 256]
    assert frame["error"].is_monotonic_decreasing


def test_energy_drift_and_gronwall_bound(run_experiment):
    code, out, summary = run_experiment(
        "experiment.name = energy\n"
        "grid.T = 1.0\n"
        "grid.stability_factor = 0.8\n" + UNIT_LINE
    )
    assert_all_pass(code, summary)
    assert summary["energy_drift_ratio"][0] >= 3.5
    assert summary["gronwall_holdout_max_ratio"][0] <= 1.0
    assert summary["gronwall_halved_max_ratio"][0] > 1.0
    assert summary["higher_order_holdout_max_ratio"][0] <= 1.0
    assert summary["higher_order_halved_max_ratio"][0] > 1.0
    drift = pd.read_csv(out / "drift.csv")
    assert len(drift) == 2
    assert (out / "ledger.csv").exists()
    upper = pd.read_csv(out / "higher_order.csv")
    assert list(upper.columns) == ["t", "norm", "lower", "data", "bound"]
    assert (upper["norm"] <= upper["bound"] * (1.0 + 1e-12)).all()


@pytest.mark.slow
def test_picard_matches_direct_solve(run_experiment):
    code, out, summary = run_experiment(
        "experiment.name = picard\n"
        "grid.dim = 2\n"
        "grid.h = 0.015625\n"
        "grid.T = 0.5\n"
        "source.norm = 1.0\n"
        "run.epsilon = 0.01\n"
    )
    assert_all_pass(code, summary)
    residuals = pd.read_csv(out / "picard.csv")
    assert len(residuals) >= 2
    assert summary["contraction_ratio"][0] < 1.0


@pytest.mark.slow
def test_parametrix_remainder_is_third_order(run_experiment):
    code, out, summary = run_experiment(
        "experiment.name = parametrix-sweep\n"
        "speed.profile = herglotz-bump\n"
        "source.norm = 1.0\n" + UNIT_SQUARE_COARSE
    )
    assert_all_pass(code, summary)
    assert 2.6 <= summary["remainder_slope"][0] <= 3.4
    assert 1.7 <= summary["first_order_slope"][0] <= 2.3
    assert len(pd.read_csv(out / "parametrix.csv")) == 3


@pytest.mark.slow
def test_linear_map_recovery_and_discrimination(run_experiment):
    code, out, summary = run_experiment(
        "experiment.name = recover-lambda\n"
        "source.recipe = gaussian-pulse\n"
        "source.center = 0.45, 0.5\n"
        "source.width = 0.1\n"
        "source.norm = 1.0\n"
        "run.discriminate = true\n" + UNIT_SQUARE_COARSE
    )
    assert_all_pass(code, summary)
    assert 0.7 <= summary["recovery_rate"][0] <= 1.3
    assert summary["discrimination_ratio"][0] >= 10.0
    assert summary["identical_twin_difference"][0] <= 1e-8
    assert (out / "trace.csv").exists()


def test_herglotz_reference_profiles(run_experiment):
    code, out, summary = run_experiment("experiment.name = herglotz\n" + UNIT_SQUARE_COARSE)
    assert_all_pass(code, summary)
    assert summary["exponential_first_failing_radius"][0] == pytest.approx(0.5, abs=2e-3)


def test_lifespan_arithmetic(run_experiment):
    code, out, summary = run_experiment(
        "experiment.name = lifespan\n"
        "grid.dim = 2\n"
        "grid.h = 0.25\n"
        "grid.outer = -0.25, 1.25\n"
        "grid.inner = 0, 1\n"
        "lifespan.C_s = 1.0\n"
        "lifespan.C_s_prime = 1.0\n"
        "lifespan.energy_route = false\n"
        "lifespan.expected_T_max = 3.0\n"
        f"run.epsilon = {1.0 / (3.0 * math.exp(4.0))!r}\n"
    )
    assert_all_pass(code, summary)
    assert summary["lifespan_T_max"][0] == pytest.approx(3.0, abs=1e-12)
    assert summary["threshold_epsilon"][0] > 0.0


@pytest.mark.parametrize(
    "text",
    [
        "experiment.name = herglotz\n" + UNIT_SQUARE_COARSE,
        "experiment.name = linear-convergence\n" + UNIT_LINE,
        "experiment.name = coupled\ngrid.T = 0.5\nrun.epsilon = 0.05\n" + UNIT_LINE,
    ],
    ids=["herglotz", "linear-convergence", "coupled"],
)
def test_reruns_are_byte_identical(run_experiment, text):
    first_code, first, _ = run_experiment(text, "first")
    second_code, second, _ = run_experiment(text, "second")
    assert first_code == second_code == 0
    names = sorted(p.name for p in first.glob("*.csv"))
    assert names
    for name in names + ["summary.txt", "config.txt"]:
        assert (first / name).read_bytes() == (second / name).read_bytes()
