"""
Unit tests for the source-to-solution maps and linear-map recovery
"""

import math
import unittest

import numpy as np

from ..domain.grid import make_grid
from ..domain.speeds import bump, constant_speed, herglotz_bump_speed
from ..exceptions import ConvergenceError
from ..linear.models import SourceData, SpeedSystem
from ..linear.sources import gaussian_pulse_source, standing_mode_source, zero_source
from .maps import lambda_lin_map, lambda_map, recover_linear_map
from .trace import trace_norm


class TestLambdaMaps(unittest.TestCase):
    """Test cases for lambda_map and lambda_lin_map"""

    def setUp(self):
        self.grid = make_grid(2, (0.0, 1.0), (0.25, 0.75), 1.0 / 16, 0.5)
        self.sys = SpeedSystem.uniform(constant_speed(self.grid), self.grid)

    def test_zero_source(self):
        F = zero_source(self.grid, 0.01)
        self.assertTrue(np.all(lambda_map(self.sys, F, self.grid).samples == 0.0))
        self.assertTrue(np.all(lambda_lin_map(self.sys, F, self.grid).samples == 0.0))

    def test_deterministic(self):
        F = gaussian_pulse_source(self.grid, center=(0.4, 0.5), width=0.1, norm=1.0, epsilon=0.02)
        a = lambda_map(self.sys, F, self.grid)
        b = lambda_map(self.sys, F, self.grid)
        np.testing.assert_array_equal(a.samples, b.samples)

    def test_finite_propagation_speed(self):
        grid = make_grid(1, (0.0, 4.0), (1.5, 2.5), 1.0 / 32, 0.25, c_max=math.sqrt(1.1))
        x = grid.axes[0]
        b0 = bump((x - 2.0) / 0.25)
        F = SourceData.create(b0, np.zeros_like(b0), None, grid, epsilon=0.01)
        near = SpeedSystem.uniform(constant_speed(grid), grid)
        far_bump = herglotz_bump_speed(grid, amplitude=0.1, radius=0.2, center=(3.7,))
        far = SpeedSystem.uniform(far_bump, grid)
        self.assertGreater(np.max(np.abs(far.c2 - near.c2)), 0.05)
        np.testing.assert_array_equal(
            lambda_map(near, F, grid).samples, lambda_map(far, F, grid).samples
        )
        np.testing.assert_array_equal(
            lambda_lin_map(near, F, grid).samples, lambda_lin_map(far, F, grid).samples
        )


class TestRecoverLinearMap(unittest.TestCase):
    """Test cases for recover_linear_map"""

    def setUp(self):
        self.grid = make_grid(2, (0.0, 1.0), (0.25, 0.75), 1.0 / 16, 0.5, c_max=math.sqrt(1.1))
        self.sys = SpeedSystem.uniform(constant_speed(self.grid), self.grid)
        self.F1 = gaussian_pulse_source(self.grid, center=(0.45, 0.5), width=0.1, norm=1.0)
        self.epsilons = [0.04, 0.02, 0.01]

    def test_linear_hook_is_exact(self):
        estimate, report = recover_linear_map(
            self.sys, self.F1, self.epsilons, self.grid, coupling=0.0
        )
        lin = lambda_lin_map(self.sys, self.F1, self.grid)
        scale = trace_norm(lin, self.grid)
        self.assertTrue(all(err <= 1e-12 * scale for err in report.errors))
        self.assertLessEqual(report.estimate_error, 1e-12 * scale)
        self.assertLessEqual(trace_norm(estimate - lin, self.grid), 1e-12 * scale)

    def test_discrepancy_is_first_order(self):
        estimate, report = recover_linear_map(self.sys, self.F1, self.epsilons, self.grid, threads=2)
        self.assertTrue(report.complete)
        self.assertIsNotNone(estimate)
        halving = report.errors[1] / report.errors[2]
        self.assertGreaterEqual(halving, 1.7)
        self.assertLessEqual(halving, 2.3)
        self.assertGreaterEqual(report.rate, 0.7)
        self.assertLessEqual(report.rate, 1.3)
        self.assertTrue(report.extrapolation_helps)
        self.assertTrue(all(a >= 0.9 * b for a, b in zip(report.errors, report.errors[1:])))

    def test_partner_epsilon_added(self):
        _, report = recover_linear_map(self.sys, self.F1, [0.03, 0.01], self.grid)
        self.assertEqual(report.epsilons, (0.03, 0.01))
        self.assertIsNotNone(report.estimate_error)

    def test_needs_two_epsilons(self):
        with self.assertRaises(ConvergenceError):
            recover_linear_map(self.sys, self.F1, [0.01], self.grid)

    def test_blow_up_gives_partial_report(self):
        F = standing_mode_source(self.grid, norm=1.0).scaled_by(20000.0)
        estimate, report = recover_linear_map(self.sys, F, [0.5, 0.25], self.grid)
        self.assertIsNone(estimate)
        self.assertFalse(report.complete)
        self.assertIn(0.25, report.failures)
        self.assertTrue(math.isnan(report.errors[1]))
        frame = report.to_frame()
        self.assertTrue(frame["failed"].iloc[1])

    def test_distinct_speeds_are_discriminated(self):
        bumped = self.sys.with_component(1, herglotz_bump_speed(self.grid, 0.1, 0.25))
        est_a, rep_a = recover_linear_map(self.sys, self.F1, self.epsilons, self.grid)
        est_b, rep_b = recover_linear_map(bumped, self.F1, self.epsilons, self.grid)
        gap = trace_norm(est_a - est_b, self.grid)
        self.assertGreaterEqual(gap, 10.0 * max(rep_a.estimate_error, rep_b.estimate_error))

        twin = SpeedSystem.uniform(constant_speed(self.grid), self.grid)
        est_c, _ = recover_linear_map(twin, self.F1, self.epsilons, self.grid)
        self.assertLessEqual(np.max(np.abs(est_a.samples - est_c.samples)), 1e-8)


if __name__ == "__main__":
    unittest.main()
