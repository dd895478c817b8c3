import unittest
from collections import Counter
from fractions import Fraction
from typing import List

from scipy import stats

from kangaroo_core.exceptions import InfeasibleTarget
from kangaroo_core.stepset import (
    DISTINGUISHED,
    STEP,
    DistinguishedPredicate,
    HashKey,
    StepSet,
    assign_step,
    build_step_set,
    distinguished_predicate,
    guide_exponent,
    is_distinguished,
    mean_step,
    step_set_from_masses,
    target_mean,
    uniform_step_set,
)


def encodings(count: int) -> List[bytes]:
    return [i.to_bytes(8, "big") for i in range(count)]


class TestStepSet(unittest.TestCase):

    def test_uniform(self) -> None:
        step_set = uniform_step_set(2, 1)
        self.assertEqual(step_set.sizes, (1, 2))
        self.assertEqual(mean_step(step_set), Fraction(3, 2))
        self.assertEqual(step_set.gamma, 1)
        self.assertEqual(step_set.s_max, 2)

    def test_single_size(self) -> None:
        step_set = uniform_step_set(2, 0)
        self.assertEqual(step_set.sizes, (1,))
        self.assertEqual(step_set.mean, 1)
        self.assertEqual(step_set.thresholds, ())

    def test_masses_must_sum_to_one(self) -> None:
        with self.assertRaises(ValueError):
            step_set_from_masses(2, [Fraction(1, 2), Fraction(1, 3)])
        with self.assertRaises(ValueError):
            step_set_from_masses(2, [Fraction(1), Fraction(0)])
        with self.assertRaises(ValueError):
            step_set_from_masses(1, [Fraction(1)])

    def test_gamma(self) -> None:
        step_set = step_set_from_masses(2, [Fraction(1, 4), Fraction(3, 4)])
        self.assertEqual(step_set.gamma, 2)
        self.assertEqual(step_set.mean, Fraction(7, 4))

    def test_tail_mass(self) -> None:
        step_set = uniform_step_set(2, 3)
        self.assertAlmostEqual(step_set.tail_mass(0), 1.0)
        self.assertAlmostEqual(step_set.tail_mass(3), 0.5)
        self.assertAlmostEqual(step_set.tail_mass(8), 0.0)

    def test_to_dict(self) -> None:
        self.assertEqual(uniform_step_set(2, 1).to_dict(), {
            "n": 2,
            "d": 1,
            "masses": [[1, 2], [1, 2]],
            "mean": [3, 2],
            "gamma": [1, 1],
        })


class TestBuildStepSet(unittest.TestCase):

    def test_target_mean(self) -> None:
        self.assertEqual(target_mean(1 << 20), 512)
        self.assertEqual(target_mean(1 << 12), 32)
        self.assertEqual(target_mean(1 << 21), Fraction(1518500249, 1 << 21))

    def test_base_2_width_2_20(self) -> None:
        step_set = build_step_set(0, 1 << 20)
        self.assertEqual(step_set.d, 12)
        self.assertEqual(step_set.mean, 512)
        self.assertLessEqual(step_set.gamma, 2)
        self.assertLessEqual(abs(step_set.d - guide_exponent(1 << 20)), 2)

    def test_base_3_needs_smaller_exponent(self) -> None:
        step_set = build_step_set(0, 1 << 20, base=3)
        self.assertEqual(step_set.d, 7)
        self.assertEqual(step_set.mean, 512)
        self.assertLessEqual(step_set.gamma, 2)
        # mass moves up onto the largest size
        self.assertGreater(step_set.masses[-1], step_set.masses[0])

    def test_base_2_width_2_16_spreads_the_shift(self) -> None:
        # no two-point shift at d = 9, 10 or 11 keeps gamma <= 2
        step_set = build_step_set(0, 1 << 16)
        self.assertEqual(step_set.d, 10)
        self.assertEqual(step_set.mean, 128)
        self.assertLessEqual(step_set.gamma, 2)
        self.assertGreater(step_set.masses[1], Fraction(1, 11))

    def test_small_interval(self) -> None:
        step_set = build_step_set(0, 16)
        self.assertEqual(step_set.d, 2)
        self.assertEqual(step_set.mean, 2)

    def test_base_5(self) -> None:
        step_set = build_step_set(0, 1 << 20, base=5)
        self.assertEqual(step_set.d, 5)
        self.assertEqual(step_set.mean, 512)

    def test_exact_mean_across_widths(self) -> None:
        for base in (2, 3, 5):
            for exponent in (12, 16, 20, 21, 24):
                width = 1 << exponent
                with self.subTest(base=base, width=width):
                    step_set = build_step_set(100, 100 + width, base=base)
                    self.assertEqual(step_set.mean, target_mean(width))
                    self.assertLessEqual(step_set.gamma, 2)
                    self.assertEqual(sum(step_set.masses), 1)

    def test_small_width_rejected(self) -> None:
        with self.assertRaises(ValueError):
            build_step_set(0, 15)

    def test_infeasible_target(self) -> None:
        with self.assertRaises(InfeasibleTarget):
            build_step_set(0, 10000, base=100, target=Fraction(10))

    def test_guide_exponent(self) -> None:
        self.assertAlmostEqual(guide_exponent(1 << 20), 11.321928, places=5)


class TestHashing(unittest.TestCase):

    def test_keys_are_deterministic_and_separate(self) -> None:
        self.assertEqual(HashKey.from_seed(7, STEP), HashKey.from_seed(7, STEP))
        self.assertNotEqual(HashKey.from_seed(7, STEP).value, HashKey.from_seed(7, DISTINGUISHED).value)
        self.assertNotEqual(HashKey.from_seed(7, STEP).value, HashKey.from_seed(8, STEP).value)

    def test_derive(self) -> None:
        key = HashKey.from_seed(7, STEP)
        self.assertEqual(key.derive(1), key.derive(1))
        self.assertNotEqual(key.derive(1).value, key.derive(2).value)
        self.assertEqual(key.derive(1).purpose, STEP)

    def test_unknown_purpose(self) -> None:
        with self.assertRaises(ValueError):
            HashKey(1, 2, "other")

    def test_assign_step_is_deterministic(self) -> None:
        step_set = uniform_step_set(2, 4)
        key = HashKey.from_seed(3, STEP)
        for data in encodings(100):
            self.assertEqual(assign_step(step_set, key, data), assign_step(step_set, key, data))
            self.assertIn(assign_step(step_set, key, data), step_set.sizes)

    def test_assign_step_follows_masses(self) -> None:
        step_set = build_step_set(0, 1 << 12)
        key = HashKey.from_seed(11, STEP)
        counts = Counter(assign_step(step_set, key, data) for data in encodings(20000))
        observed = [counts[size] for size in step_set.sizes]
        expected = [20000 * p for p in step_set.probabilities]
        _, p_value = stats.chisquare(observed, expected)
        self.assertGreater(p_value, 1e-4)

    def test_step_key_changes_assignments(self) -> None:
        # two independent keys agree with probability sum p^2 = 1/5
        step_set = uniform_step_set(2, 4)
        first, second = HashKey.from_seed(3, STEP), HashKey.from_seed(4, STEP)
        data = encodings(2000)
        changed = sum(assign_step(step_set, first, item) != assign_step(step_set, second, item) for item in data)
        self.assertGreater(changed / 2000, 0.7)

    def test_step_and_distinguished_hashes_uncorrelated(self) -> None:
        step_key, distinguished_key = HashKey.from_seed(9, STEP), HashKey.from_seed(9, DISTINGUISHED)
        data = encodings(20000)
        r, _ = stats.pearsonr(
            [step_key.hash(item) / 2 ** 64 for item in data],
            [distinguished_key.hash(item) / 2 ** 64 for item in data],
        )
        self.assertLess(abs(r), 5 / 20000 ** 0.5)

    def test_distinguished_density(self) -> None:
        key = HashKey.from_seed(5, DISTINGUISHED)
        predicate = distinguished_predicate(1 << 20, 64, key)
        self.assertEqual(predicate.density, Fraction(1, 16))
        hits = sum(is_distinguished(predicate, data) for data in encodings(32000))
        # 2000 expected, sigma about 43
        self.assertLess(abs(hits - 2000), 5 * 43)

    def test_density_clamped(self) -> None:
        predicate = distinguished_predicate(16, 64, HashKey.from_seed(5, DISTINGUISHED))
        self.assertEqual(predicate.density, 1)
        self.assertTrue(all(is_distinguished(predicate, data) for data in encodings(100)))

    def test_predicate_needs_distinguished_key(self) -> None:
        with self.assertRaises(ValueError):
            DistinguishedPredicate(Fraction(1, 2), HashKey.from_seed(5, STEP))
        with self.assertRaises(ValueError):
            DistinguishedPredicate(Fraction(0), HashKey.from_seed(5, DISTINGUISHED))


class TestStepSetType(unittest.TestCase):

    def test_frozen(self) -> None:
        step_set: StepSet = uniform_step_set(3, 2)
        self.assertEqual(step_set.sizes, (1, 3, 9))
        with self.assertRaises(Exception):
            step_set.base = 5  # type: ignore
