"""
Unit tests for discrete Sobolev norms
"""

import math
import unittest

import numpy as np

from ..exceptions import ShapeMismatchError, UnsupportedOrderError
from .grid import make_grid
from .models import ScalarFieldSnapshot, SobolevOrder
from .norms import c_l2_norm, s_norm, sobolev_norm


class TestSobolevNorm(unittest.TestCase):
    """Test cases for sobolev_norm"""

    def setUp(self):
        self.grid = make_grid(1, (0.0, 1.0), (0.25, 0.75), 1.0 / 256, 0.5)
        self.x = self.grid.axes[0]

    def test_constant_order_zero_is_one(self):
        u = np.ones(self.grid.shape)
        self.assertAlmostEqual(sobolev_norm(u, self.grid, 0), 1.0, places=12)

    def test_constant_order_one_gradient_vanishes(self):
        u = np.ones(self.grid.shape)
        self.assertAlmostEqual(sobolev_norm(u, self.grid, 1), 1.0, places=12)

    def test_constant_on_unit_square(self):
        grid = make_grid(2, (0.0, 1.0), (0.25, 0.75), 1.0 / 16, 0.5)
        self.assertAlmostEqual(sobolev_norm(np.ones(grid.shape), grid, 2), 1.0, places=12)

    def test_sine_order_one_matches_integral(self):
        u = np.sin(math.pi * self.x)
        expected = math.sqrt(0.5 + math.pi**2 / 2)
        self.assertAlmostEqual(sobolev_norm(u, self.grid, 1), expected, delta=1e-2)

    def test_homogeneity(self):
        rng = np.random.default_rng(7)
        u = rng.standard_normal(self.grid.shape)
        for order in range(4):
            base = sobolev_norm(u, self.grid, order)
            for alpha in (-3.0, 0.5, 1e3):
                with self.subTest(order=order, alpha=alpha):
                    scaled = sobolev_norm(alpha * u, self.grid, order)
                    self.assertLessEqual(abs(scaled - abs(alpha) * base), 1e-13 * abs(alpha) * base)

    def test_monotone_in_order(self):
        grid = make_grid(2, (0.0, 1.0), (0.25, 0.75), 1.0 / 32, 0.5)
        x, y = grid.coordinates
        u = np.sin(math.pi * x) * np.cos(2 * math.pi * y) + 0.1 * x * y
        norms = [sobolev_norm(u, grid, k) for k in range(4)]
        for lower, higher in zip(norms, norms[1:]):
            self.assertGreaterEqual(higher, lower)

    def test_vector_combines_components(self):
        u = np.sin(math.pi * self.x)
        scalar = sobolev_norm(u, self.grid, 2)
        vector = sobolev_norm([u, u, u], self.grid, 2)
        self.assertAlmostEqual(vector, math.sqrt(3.0) * scalar, places=10)

    def test_snapshot_input(self):
        u = np.sin(math.pi * self.x)
        snap = ScalarFieldSnapshot(u, time_index=3)
        self.assertEqual(sobolev_norm(snap, self.grid, 0), sobolev_norm(u, self.grid, 0))

    def test_unsupported_order(self):
        with self.assertRaises(UnsupportedOrderError):
            sobolev_norm(np.ones(self.grid.shape), self.grid, 4)
        with self.assertRaises(UnsupportedOrderError):
            SobolevOrder(-1)

    def test_shape_mismatch(self):
        with self.assertRaises(ShapeMismatchError):
            sobolev_norm(np.ones(10), self.grid, 0)

    def test_snapshot_rejects_non_finite(self):
        with self.assertRaises(ValueError):
            ScalarFieldSnapshot(np.array([0.0, np.nan]))


class TestTrajectoryNorms(unittest.TestCase):
    """Test cases for norms over time levels"""

    def test_standing_wave_norms(self):
        grid = make_grid(1, (0.0, 1.0), (0.25, 0.75), 1.0 / 128, 0.5)
        x = grid.axes[0]
        t = grid.times
        snaps = (np.cos(math.pi * t)[:, None] * np.sin(math.pi * x)[None, :])[:, None, :]
        self.assertAlmostEqual(c_l2_norm(snaps, grid), math.sqrt(0.5), places=10)
        # H^1 peak at t=0 plus velocity peak at t=0.5
        expected = math.sqrt(0.5 + math.pi**2 / 2) + math.pi * math.sqrt(0.5)
        self.assertAlmostEqual(s_norm(snaps, grid), expected, delta=2e-2)


if __name__ == "__main__":
    unittest.main()
