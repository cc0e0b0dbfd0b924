"""
Unit tests for energy ledgers and the Gronwall bound
"""

import math
import tempfile
import unittest
from pathlib import Path

import numpy as np
import pandas as pd

from ..domain.grid import make_grid
from ..domain.speeds import constant_speed, herglotz_bump_speed
from ..linear.models import SpeedSystem
from ..linear.solver import solve_scalar_linear, solve_system_linear
from ..linear.sources import gaussian_forcing, gaussian_pulse_source, standing_mode_source
from ..domain.norms import sobolev_norm
from ..exceptions import UnsupportedOrderError
from .energy import (
    calibrate_gronwall_constant,
    calibrate_higher_order_constant,
    data_norm,
    energy_drift,
    energy_ledger,
    estimate_a_beta,
    estimate_a_tilde,
    gronwall_check,
    higher_order_check,
    higher_order_ledger,
)
from .io import write_ledger_csv


def standing_wave_drift(stability_factor):
    grid = make_grid(1, (0.0, 1.0), (0.25, 0.75), 1.0 / 64, 1.0, stability_factor)
    x = grid.axes[0]
    c = constant_speed(grid)
    u = solve_scalar_linear(c, np.sin(math.pi * x), np.zeros_like(x), None, grid)
    return energy_drift(energy_ledger(u, c, grid))


class TestEnergyLedger(unittest.TestCase):
    """Test cases for energy_ledger"""

    def test_zero_field(self):
        grid = make_grid(2, (0.0, 1.0), (0.25, 0.75), 1.0 / 16, 0.5)
        ledger = energy_ledger(np.zeros((grid.n_steps + 1,) + grid.shape), constant_speed(grid), grid)
        self.assertTrue(np.all(ledger.E_plain == 0.0))
        self.assertTrue(np.all(ledger.E_weighted == 0.0))
        self.assertEqual(energy_drift(ledger), 0.0)

    def test_standing_wave_energy(self):
        grid = make_grid(1, (0.0, 1.0), (0.25, 0.75), 1.0 / 128, 1.0)
        x = grid.axes[0]
        c = constant_speed(grid)
        u = solve_scalar_linear(c, np.sin(math.pi * x), np.zeros_like(x), None, grid)
        ledger = energy_ledger(u, c, grid)
        np.testing.assert_allclose(ledger.E_plain[1:-1], math.pi**2 / 4, rtol=1e-2)
        np.testing.assert_array_equal(ledger.E_plain, ledger.E_weighted)

    def test_drift_is_second_order_in_dt(self):
        coarse = standing_wave_drift(0.8)
        fine = standing_wave_drift(0.4)
        self.assertGreater(fine, 0.0)
        self.assertGreaterEqual(coarse / fine, 3.5)

    def test_weighted_gradient_sandwich(self):
        grid = make_grid(2, (0.0, 1.0), (0.25, 0.75), 1.0 / 32, 0.5, c_max=math.sqrt(1.1))
        speed = herglotz_bump_speed(grid, 0.1, 0.25)
        sys = SpeedSystem.uniform(speed, grid)
        u = solve_system_linear(sys, gaussian_pulse_source(grid, center=(0.4, 0.5), width=0.1), grid)
        ledger = energy_ledger(u, speed, grid, component=2)
        slack = 1e-14 * ledger.grad_plain
        self.assertTrue(np.all(speed.m0 * ledger.grad_plain <= ledger.grad_weighted + slack))
        self.assertTrue(np.all(ledger.grad_weighted <= speed.m1 * ledger.grad_plain + slack))
        self.assertTrue(np.all(ledger.E_plain >= 0.0))

    def test_a_tilde_of_bump(self):
        grid = make_grid(2, (0.0, 1.0), (0.25, 0.75), 1.0 / 16, 0.5, c_max=math.sqrt(1.1))
        self.assertAlmostEqual(estimate_a_tilde(herglotz_bump_speed(grid, 0.1, 0.25), grid), 1.1, places=12)
        self.assertEqual(estimate_a_tilde(constant_speed(grid), grid), 1.0)


class TestGronwallCheck(unittest.TestCase):
    """Test cases for calibrate_gronwall_constant and gronwall_check"""

    def setUp(self):
        self.grid = make_grid(1, (0.0, 1.0), (0.25, 0.75), 1.0 / 64, 1.0)
        self.speed = constant_speed(self.grid)
        self.sys = SpeedSystem.uniform(self.speed, self.grid)
        self.A = estimate_a_tilde(self.sys, self.grid)

    def solve_ledger(self, F):
        u = solve_system_linear(self.sys, F, self.grid)
        return energy_ledger(u, self.speed, self.grid), data_norm(F, self.grid, component=0)

    def calibrated(self):
        ledger, norm = self.solve_ledger(standing_mode_source(self.grid))
        return ledger, norm, calibrate_gronwall_constant(ledger, norm, self.A)

    def test_standing_wave_data_norm(self):
        _, norm = self.solve_ledger(standing_mode_source(self.grid))
        self.assertAlmostEqual(norm, math.sqrt(0.5 + math.pi**2 / 2), delta=1e-2)

    def test_calibration_run_passes(self):
        ledger, norm, C = self.calibrated()
        self.assertAlmostEqual(C, 0.95, delta=0.02)
        report = gronwall_check(ledger, norm, C, self.A)
        self.assertTrue(report.passed)
        self.assertLessEqual(report.max_ratio, 1.0 + 1e-12)

    def test_hold_out_forcing_passes(self):
        _, _, C = self.calibrated()
        ledger, norm = self.solve_ledger(gaussian_forcing(self.grid, center=(0.5,), width=0.1, frequency=1.0))
        report = gronwall_check(ledger, norm, C, self.A)
        self.assertTrue(report.passed)
        self.assertLessEqual(report.max_ratio, 0.6)

    def test_halved_constant_fails(self):
        ledger, norm, C = self.calibrated()
        report = gronwall_check(ledger, norm, 0.5 * C, self.A)
        self.assertFalse(report.passed)
        self.assertAlmostEqual(report.max_ratio, 2.0, delta=1e-9)

    def test_zero_solution_passes(self):
        ledger = energy_ledger(np.zeros((self.grid.n_steps + 1,) + self.grid.shape), self.speed, self.grid)
        report = gronwall_check(ledger, 0.0, 1.0, self.A)
        self.assertTrue(report.passed)
        self.assertEqual(report.max_ratio, 0.0)

    def test_ledger_csv(self):
        ledger, norm, C = self.calibrated()
        ledger = energy_ledger(
            solve_system_linear(self.sys, standing_mode_source(self.grid), self.grid),
            self.speed,
            self.grid,
            C=C,
            A_tilde=self.A,
            data_norm=norm,
        )
        self.assertEqual(ledger.bound_curve.shape, ledger.times.shape)
        with tempfile.TemporaryDirectory() as tmp:
            frame = pd.read_csv(write_ledger_csv(Path(tmp) / "ledger.csv", ledger))
        self.assertEqual(list(frame.columns), ["t", "E_plain", "E_weighted", "bound"])
        self.assertEqual(len(frame), self.grid.n_steps + 1)


class TestHigherOrderBound(unittest.TestCase):
    """Test cases for higher_order_ledger and higher_order_check"""

    def setUp(self):
        self.grid = make_grid(1, (0.0, 1.0), (0.25, 0.75), 1.0 / 64, 1.0)
        self.sys = SpeedSystem.uniform(constant_speed(self.grid), self.grid)
        self.A = estimate_a_beta(self.sys, self.grid)

    def ledger(self, F, order=2, **bound):
        u = solve_system_linear(self.sys, F, self.grid)
        return higher_order_ledger(u, F, self.grid, order=order, **bound)

    def test_a_beta(self):
        self.assertAlmostEqual(self.A, 1.0, places=12)
        bump = make_grid(2, (0.0, 1.0), (0.25, 0.75), 1.0 / 16, 0.5, c_max=math.sqrt(1.1))
        speed = herglotz_bump_speed(bump, 0.1, 0.25)
        self.assertGreaterEqual(estimate_a_beta(speed, bump), estimate_a_tilde(speed, bump))
        self.assertGreaterEqual(estimate_a_beta(speed, bump, 3), estimate_a_beta(speed, bump, 2))

    def test_ledger_terms(self):
        F = standing_mode_source(self.grid)
        ledger = self.ledger(F)
        initial = sobolev_norm(F.b0[0], self.grid, 2) + sobolev_norm(F.b1[0], self.grid, 1)
        np.testing.assert_allclose(ledger.data, initial, rtol=1e-14)
        self.assertTrue(np.all(ledger.norm >= ledger.lower))
        self.assertTrue(np.all(ledger.lower > 0.0))
        self.assertIsNone(ledger.bound_curve)

    def test_forcing_accumulates_in_data(self):
        ledger = self.ledger(gaussian_forcing(self.grid, center=(0.5,), width=0.1, frequency=1.0))
        self.assertEqual(ledger.data[0], 0.0)
        self.assertTrue(np.all(np.diff(ledger.data) >= 0.0))
        self.assertGreater(ledger.data[-1], 0.0)

    def test_calibration_and_hold_out(self):
        ledger = self.ledger(standing_mode_source(self.grid))
        C1 = calibrate_higher_order_constant(ledger, self.A)
        self.assertGreater(C1, 0.0)
        self.assertLessEqual(higher_order_check(ledger, C1, self.A).max_ratio, 1.0 + 1e-12)
        held = higher_order_check(
            self.ledger(gaussian_forcing(self.grid, center=(0.5,), width=0.1, frequency=1.0)), C1, self.A
        )
        self.assertTrue(held.passed)
        self.assertEqual(held.C, C1)

    def test_halved_constant_fails(self):
        ledger = self.ledger(standing_mode_source(self.grid), order=3)
        C1 = calibrate_higher_order_constant(ledger, self.A)
        report = higher_order_check(ledger, 0.5 * C1, self.A)
        self.assertFalse(report.passed)
        self.assertAlmostEqual(report.max_ratio, 2.0, delta=1e-9)

    def test_bound_curve_and_frame(self):
        ledger = self.ledger(standing_mode_source(self.grid), C1=1.0, A_beta=self.A)
        self.assertEqual(ledger.bound_curve.shape, ledger.times.shape)
        self.assertTrue(np.all(np.diff(ledger.bound_curve) >= 0.0))
        self.assertAlmostEqual(ledger.bound_curve[0], ledger.data[0], places=12)
        frame = ledger.to_frame()
        self.assertEqual(list(frame.columns), ["t", "norm", "lower", "data", "bound"])

    def test_order_outside_range(self):
        F = standing_mode_source(self.grid)
        for order in (1, 4):
            with self.assertRaises(UnsupportedOrderError):
                self.ledger(F, order=order)

    def test_zero_data_cannot_calibrate(self):
        zeros = np.zeros((self.grid.n_steps + 1,) + self.grid.shape)
        F = standing_mode_source(self.grid).scaled_by(0.0)
        ledger = higher_order_ledger(zeros, F, self.grid)
        with self.assertRaises(ValueError):
            calibrate_higher_order_constant(ledger, self.A)
        self.assertEqual(higher_order_check(ledger, 1.0, self.A).max_ratio, 0.0)


if __name__ == "__main__":
    unittest.main()
