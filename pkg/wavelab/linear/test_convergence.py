"""
Unit tests for grid-refinement studies and source recipes
"""

import unittest

import numpy as np

from ..domain.grid import make_grid
from ..domain.speeds import constant_speed
from ..exceptions import ConvergenceError, ShapeMismatchError, SourceDataError
from .convergence import (
    ConvergenceProblem,
    convergence_order,
    fit_loglog_slope,
    manufactured_problem,
    standing_wave_problem,
)
from .models import SourceData, SpeedSystem
from .sources import gaussian_forcing, standing_mode_source, zero_source


def zero_problem():
    def setup(h):
        grid = make_grid(1, (0.0, 1.0), (0.25, 0.75), h, 0.5)
        return SpeedSystem.uniform(constant_speed(grid), grid), zero_source(grid), grid

    return ConvergenceProblem("zero", setup, lambda grid, t: np.zeros(grid.shape))


class TestConvergenceOrder(unittest.TestCase):
    """Test cases for convergence_order"""

    def test_standing_wave_is_second_order(self):
        result = convergence_order(standing_wave_problem(), (1 / 64, 1 / 128, 1 / 256))
        self.assertFalse(result.exact)
        self.assertGreaterEqual(result.order, 1.8)
        self.assertLessEqual(result.order, 2.2)
        self.assertTrue(all(a > b for a, b in zip(result.errors, result.errors[1:])))

    def test_manufactured_is_second_order(self):
        result = convergence_order(manufactured_problem(), (1 / 64, 1 / 128, 1 / 256), threads=2)
        self.assertGreaterEqual(result.order, 1.8)
        self.assertLessEqual(result.order, 2.2)

    def test_exact_reproduction_sentinel(self):
        result = convergence_order(zero_problem(), (1 / 16, 1 / 32, 1 / 64))
        self.assertTrue(result.exact)
        self.assertIsNone(result.order)
        self.assertEqual(result.to_dict()["errors"], [0.0, 0.0, 0.0])

    def test_needs_three_resolutions(self):
        with self.assertRaises(ConvergenceError):
            convergence_order(standing_wave_problem(), (1 / 64, 1 / 128))

    def test_fit_loglog_slope(self):
        h = np.array([0.1, 0.05, 0.025])
        self.assertAlmostEqual(fit_loglog_slope(h, 3.0 * h**2), 2.0, places=12)
        with self.assertRaises(ConvergenceError):
            fit_loglog_slope(h, np.array([1.0, 0.0, 1.0]))


class TestSourceData(unittest.TestCase):
    """Test cases for SourceData and the builtin recipes"""

    def setUp(self):
        self.grid = make_grid(2, (0.0, 1.0), (0.25, 0.75), 1.0 / 32, 0.5)

    def test_normalised_recipe_is_admissible(self):
        F = standing_mode_source(self.grid, norm=1.0)
        self.assertAlmostEqual(F.base_norm, 1.0, places=12)
        self.assertTrue(F.admissible)

    def test_admissibility_follows_norm(self):
        raw = standing_mode_source(self.grid)
        self.assertFalse(raw.admissible)
        self.assertTrue(raw.normalized(0.5).admissible)
        self.assertFalse(raw.normalized(0.5).scaled_by(3.0).admissible)
        self.assertFalse(raw.normalized(1.0, admissible=False).admissible)
        self.assertTrue(gaussian_forcing(self.grid, norm=1.0).admissible)

    def test_base_norm_of_forcing_closure(self):
        F = gaussian_forcing(self.grid, width=0.1, frequency=2.0, norm=0.5)
        self.assertAlmostEqual(F.base_norm, 0.5, places=12)
        sampled = F.sampled_forcing(self.grid)
        self.assertEqual(sampled.shape, (self.grid.n_steps + 1, 3) + self.grid.shape)

    def test_scaling(self):
        F = standing_mode_source(self.grid, norm=0.25)
        G = F.scaled_by(2.0)
        self.assertAlmostEqual(G.base_norm, 0.5, places=12)
        np.testing.assert_array_equal(G.b0, 2.0 * F.b0)
        self.assertEqual(F.with_epsilon(0.01).displacement.max(), 0.01 * F.b0.max())

    def test_boundary_violation(self):
        ones = np.ones((3,) + self.grid.shape)
        with self.assertRaises(SourceDataError):
            SourceData.create(ones, np.zeros_like(ones), None, self.grid)

    def test_admissible_class_enforced(self):
        F = standing_mode_source(self.grid)
        self.assertGreater(F.base_norm, 1.0)
        with self.assertRaises(SourceDataError):
            SourceData.create(F.b0, F.b1, None, self.grid, admissible=True)

    def test_epsilon_range(self):
        with self.assertRaises(SourceDataError):
            zero_source(self.grid, epsilon=0.0)
        with self.assertRaises(SourceDataError):
            zero_source(self.grid).with_epsilon(1.5)

    def test_forcing_shape_checked(self):
        zeros = np.zeros((3,) + self.grid.shape)
        with self.assertRaises(ShapeMismatchError):
            SourceData.create(zeros, zeros, np.zeros((2, 3) + self.grid.shape), self.grid)

    def test_zero_source(self):
        F = zero_source(self.grid)
        self.assertTrue(F.is_zero)
        self.assertEqual(F.base_norm, 0.0)
        self.assertFalse(standing_mode_source(self.grid).is_zero)


if __name__ == "__main__":
    unittest.main()
