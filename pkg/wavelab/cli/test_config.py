"""
Unit tests for experiment config parsing
"""

import random
import unittest

from pydantic import ValidationError

from ..exceptions import ConfigError
from .config import format_config, parse_config

MINIMAL = """
experiment.name = energy
grid.dim = 1
grid.h = 0.015625
speed.profile = constant
source.recipe = standing-mode
"""


class TestParseConfig(unittest.TestCase):
    """Test cases for parse_config"""

    def test_minimal_config_gets_defaults(self):
        config = parse_config(MINIMAL)
        self.assertEqual(config.experiment.name, "energy")
        self.assertEqual(config.experiment.seed, 0)
        self.assertEqual(config.grid.dim, 1)
        self.assertEqual(config.grid.h, 0.015625)
        self.assertEqual(config.grid.T, 1.0)
        self.assertEqual(config.grid.stability_factor, 0.9)
        self.assertEqual(config.grid.outer, [0.0, 1.0])
        self.assertEqual(config.grid.inner, [0.25, 0.75])
        self.assertIsNone(config.grid.c_max)
        self.assertEqual(config.run.epsilon, 0.01)
        self.assertIsNone(config.run.epsilon_list)
        self.assertEqual(config.source.weights, [1.0, 1.0, 1.0])
        self.assertEqual(config.output.dir, "wavelab-out")

    def test_comments_and_lists(self):
        text = (
            "# sweep\n"
            "experiment.name = parametrix-sweep   # trailing comment\n"
            "\n"
            "grid.dim = 2\n"
            "grid.h = 0.0625\n"
            "grid.outer = 0, 1, 0, 2\n"
            "run.epsilon_list = 0.04, 0.02, 0.01\n"
            "run.discriminate = true\n"
        )
        config = parse_config(text)
        self.assertEqual(config.run.epsilon_list, [0.04, 0.02, 0.01])
        self.assertTrue(config.run.discriminate)
        self.assertEqual(config.grid.extent(config.grid.outer), [(0.0, 1.0), (0.0, 2.0)])
        self.assertEqual(config.grid.extent(config.grid.inner), [(0.25, 0.75), (0.25, 0.75)])

    def test_epsilon_list_must_decrease(self):
        with self.assertRaises(ConfigError) as ctx:
            parse_config(MINIMAL + "run.epsilon_list = 0.01, 0.02\n")
        self.assertIn("strictly decreasing", str(ctx.exception))
        self.assertEqual(ctx.exception.line, 7)

    def test_unknown_key_reports_line(self):
        with self.assertRaises(ConfigError) as ctx:
            parse_config(MINIMAL + "grid.spacing = 0.1\n")
        self.assertIn("unknown key 'grid.spacing'", str(ctx.exception))
        self.assertEqual(ctx.exception.line, 7)

    def test_unknown_section(self):
        with self.assertRaises(ConfigError) as ctx:
            parse_config("solver.kind = rk4\n")
        self.assertEqual(ctx.exception.line, 1)

    def test_type_mismatch_reports_line(self):
        with self.assertRaises(ConfigError) as ctx:
            parse_config(MINIMAL.replace("grid.dim = 1", "grid.dim = two"))
        self.assertIn("grid.dim", str(ctx.exception))
        self.assertEqual(ctx.exception.line, 3)

    def test_missing_required_key(self):
        with self.assertRaises(ConfigError) as ctx:
            parse_config(MINIMAL.replace("grid.h = 0.015625\n", ""))
        self.assertIn("missing required key 'grid.h'", str(ctx.exception))
        self.assertIsNone(ctx.exception.line)

    def test_unknown_experiment(self):
        with self.assertRaises(ConfigError) as ctx:
            parse_config(MINIMAL.replace("energy", "entropy"))
        self.assertIn("experiment.name", str(ctx.exception))

    def test_malformed_lines(self):
        for text in ("experiment.name energy\n", "name = energy\n", MINIMAL + "grid.h = 0.5\n"):
            with self.assertRaises(ConfigError):
                parse_config(text)

    def test_extent_length_checked(self):
        with self.assertRaises(ConfigError) as ctx:
            parse_config(MINIMAL + "grid.outer = 0, 1, 2\n")
        self.assertEqual(ctx.exception.line, 7)

    def test_config_is_frozen(self):
        config = parse_config(MINIMAL)
        with self.assertRaises(ValidationError):
            config.grid.h = 0.5


def random_config_text(rng: random.Random) -> str:
    dim = rng.choice([1, 2, 3])
    n = rng.randint(1, 4)
    epsilons = sorted({rng.uniform(0.001, 0.5) for _ in range(n)}, reverse=True)
    lines = [
        f"experiment.name = {rng.choice(['energy', 'picard', 'lifespan', 'recover-lambda'])}",
        f"experiment.seed = {rng.randint(0, 1000)}",
        f"grid.dim = {dim}",
        f"grid.h = {rng.choice([0.25, 0.125, 0.0625, 0.015625])}",
        f"grid.T = {rng.uniform(0.1, 3.0)!r}",
        f"grid.stability_factor = {rng.uniform(0.1, 1.0)!r}",
        f"speed.profile = {rng.choice(['constant', 'herglotz-bump', 'radial-decay'])}",
        f"speed.amplitude = {rng.uniform(-0.5, 0.5)!r}",
        f"source.recipe = {rng.choice(['standing-mode', 'gaussian-pulse', 'zero'])}",
        f"source.weights = {', '.join(repr(rng.uniform(0, 2)) for _ in range(3))}",
        f"run.epsilon_list = {', '.join(repr(e) for e in epsilons)}",
        f"run.discriminate = {rng.choice(['true', 'false'])}",
    ]
    if rng.random() < 0.5:
        lines.append(f"source.norm = {rng.uniform(0.1, 1.0)!r}")
    if rng.random() < 0.5:
        lines.append(f"lifespan.C_s = {rng.uniform(0.5, 2.0)!r}")
    rng.shuffle(lines)
    return "\n".join(lines) + "\n"


class TestFormatConfig(unittest.TestCase):
    """Test cases for format_config"""

    def test_round_trip(self):
        rng = random.Random(7)
        for _ in range(25):
            config = parse_config(random_config_text(rng))
            text = format_config(config)
            again = parse_config(text)
            self.assertEqual(again, config)
            self.assertEqual(format_config(again), text)

    def test_unset_options_are_omitted(self):
        text = format_config(parse_config(MINIMAL))
        self.assertNotIn("run.epsilon_list", text)
        self.assertNotIn("grid.c_max", text)
        self.assertIn("grid.h = 0.015625\n", text)


if __name__ == "__main__":
    unittest.main()
