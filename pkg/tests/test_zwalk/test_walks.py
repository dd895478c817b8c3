import unittest

import numpy as np

from kangaroo_core.stepset import uniform_step_set
from kangaroo_core.zwalk import StepStream, WalkTrail, first_intersection, visit_profile


def generator(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


def first_intersection_oracle() -> float:
    """Expected first intersection for uniform {1, 2} from X0 = Y0, as a two-state absorbing chain

    State 0 is the start, state 1 has Y one ahead of X. From the start X hits
    with probability 5/8, otherwise Y ends one ahead; from there X hits with
    probability 3/4 each step.
    """
    transient = np.array([[0.0, 3 / 8], [0.0, 1 / 4]])
    expected = np.linalg.solve(np.eye(2) - transient, np.ones(2))
    return float(expected[0])


class TestStepStream(unittest.TestCase):

    def test_draws_follow_masses(self) -> None:
        stream = StepStream(uniform_step_set(2, 2), generator(1))
        draws = [stream.step() for _ in range(30000)]
        self.assertEqual(set(draws), {1, 2, 4})
        for size in (1, 2, 4):
            # sigma of a count of 10000 is about 82
            self.assertLess(abs(draws.count(size) - 10000), 5 * 82)
        self.assertIsInstance(draws[0], int)

    def test_same_seed_same_draws(self) -> None:
        first = StepStream(uniform_step_set(3, 3), generator(5))
        second = StepStream(uniform_step_set(3, 3), generator(5))
        self.assertEqual([first.step() for _ in range(600)], [second.step() for _ in range(600)])
        self.assertEqual([first.coin() for _ in range(600)], [second.coin() for _ in range(600)])


class TestWalkTrail(unittest.TestCase):

    def test_membership(self) -> None:
        trail = WalkTrail(3)
        trail.hop(2)
        trail.hop(4)
        self.assertEqual(trail.frontier, 9)
        self.assertIn(3, trail)
        self.assertIn(5, trail)
        self.assertNotIn(4, trail)
        self.assertEqual(len(trail), 3)

    def test_prune_keeps_recent_positions(self) -> None:
        trail = WalkTrail(0)
        for _ in range(5000):
            trail.hop(1)
        trail.prune(4990)
        self.assertNotIn(10, trail)
        self.assertIn(4990, trail)
        self.assertIn(5000, trail)


class TestFirstIntersection(unittest.TestCase):

    def test_single_size(self) -> None:
        self.assertEqual(first_intersection(uniform_step_set(2, 0), 0, 0, generator(0)), 1)
        self.assertEqual(first_intersection(uniform_step_set(2, 0), 0, 5, generator(0)), 5)

    def test_two_sizes_matches_chain(self) -> None:
        oracle = first_intersection_oracle()
        self.assertAlmostEqual(oracle, 1.5)
        step_set = uniform_step_set(2, 1)
        samples = np.array([
            first_intersection(step_set, 0, 0, child) for child in generator(11).spawn(20000)
        ], dtype=float)
        stderr = samples.std(ddof=1) / np.sqrt(len(samples))
        self.assertLess(abs(samples.mean() - oracle), 4 * stderr)

    def test_any_start(self) -> None:
        step_set = uniform_step_set(2, 3)
        for x0, y0 in ((0, 5), (5, 0), (100, 100), (0, 200)):
            self.assertGreaterEqual(first_intersection(step_set, x0, y0, generator(x0 + y0)), 1)

    def test_deterministic(self) -> None:
        step_set = uniform_step_set(2, 4)
        self.assertEqual(
            first_intersection(step_set, 0, 3, generator(9)),
            first_intersection(step_set, 0, 3, generator(9)),
        )


class TestVisitProfile(unittest.TestCase):

    def test_exact_small_positions(self) -> None:
        profile = visit_profile(uniform_step_set(2, 1), 20000, 3, False, generator(3))
        self.assertEqual(profile[0], 1.0)
        # P(visit 1) = 1/2 and P(visit 2) = 3/4, sigma at most 0.0036
        self.assertLess(abs(profile[1] - 0.5), 0.02)
        self.assertLess(abs(profile[2] - 0.75), 0.02)

    def test_lazy_walk_visits_like_ordinary_walk(self) -> None:
        step_set = uniform_step_set(2, 2)
        ordinary = visit_profile(step_set, 20000, 12, False, generator(21))
        lazy = visit_profile(step_set, 20000, 12, True, generator(22))
        # sigma of a difference is at most 0.005
        self.assertLess(float(np.max(np.abs(ordinary - lazy))), 0.025)

    def test_trials_must_be_positive(self) -> None:
        with self.assertRaises(ValueError):
            visit_profile(uniform_step_set(2, 1), 0, 3, False, generator(3))
