"""
Unit tests for the experiment helpers
"""

import math
import unittest

from ..analysis.energy import energy_drift, energy_ledger
from ..domain.grid import make_grid
from ..domain.speeds import herglotz_bump_speed
from ..linear.models import SpeedSystem
from ..linear.solver import solve_system_linear
from ..linear.sources import gaussian_pulse_source
from .experiments import _refined, drift_study


class TestDriftStudy(unittest.TestCase):
    """Test cases for drift_study"""

    def setUp(self):
        self.grid = make_grid(2, (0.0, 1.0), (0.25, 0.75), 1.0 / 16, 0.5, 0.8, c_max=math.sqrt(1.1))
        self.sys = SpeedSystem.uniform(herglotz_bump_speed(self.grid, 0.1, 0.25), self.grid)
        self.F = gaussian_pulse_source(self.grid, center=(0.4, 0.5), width=0.1)

    def test_uses_weighted_energy(self):
        frame = drift_study(self.sys, self.F, self.grid, (0.8, 0.4), component=1)
        self.assertEqual(list(frame.columns), ["stability_factor", "dt", "drift"])
        for factor, dt, drift in frame.itertuples(index=False):
            g = _refined(self.grid, factor)
            self.assertEqual(dt, g.dt)
            u = solve_system_linear(self.sys.on_grid(g), self.F, g)
            ledger = energy_ledger(u, self.sys.speeds[1], g, component=1)
            self.assertEqual(drift, energy_drift(ledger, weighted=True))
            self.assertNotEqual(drift, energy_drift(ledger))

    def test_weighted_drift_shrinks_with_dt(self):
        frame = drift_study(self.sys, self.F, self.grid, (0.8, 0.4))
        self.assertGreater(frame["drift"].iloc[1], 0.0)
        self.assertLess(frame["drift"].iloc[1], frame["drift"].iloc[0])


if __name__ == "__main__":
    unittest.main()
