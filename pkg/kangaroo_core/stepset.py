"""Jump sizes, the hash assigning them to group elements, and distinguished points

A step set is S = {n^0, ..., n^d} with exact rational masses p. Sets built for
an interval of width w have mean exactly target_mean(w), which is sqrt(w)/2
whenever w is a perfect square.
"""
import logging
from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from math import log2
from typing import List, Optional, Sequence, Tuple

import numpy as np

from kangaroo_core.exceptions import InfeasibleTarget
from kangaroo_core.utils.mixer import keyed_hash
from kangaroo_core.utils.rationals import sqrt_rational


STEP = "step"
DISTINGUISHED = "distinguished"
_PURPOSE_IDS = {STEP: 1, DISTINGUISHED: 2}
_GAMMA_LIMIT = Fraction(2)
_TWO_64 = 1 << 64


@dataclass(frozen=True)
class HashKey:
    """A 128-bit key for one purpose. Step and distinguished keys are never shared"""
    lo: int
    hi: int
    purpose: str

    def __post_init__(self) -> None:
        if self.purpose not in _PURPOSE_IDS:
            raise ValueError(f"Unknown hash key purpose {self.purpose!r}.")

    @classmethod
    def from_seed(cls, seed: int, purpose: str) -> "HashKey":
        """Derives a key from an integer seed, independently per purpose

        :param seed: non-negative seed
        :param purpose: STEP or DISTINGUISHED
        :return: The key
        """
        words = np.random.SeedSequence([seed, _PURPOSE_IDS[purpose]]).generate_state(2, dtype=np.uint64)
        return cls(int(words[0]), int(words[1]), purpose)

    def derive(self, counter: int) -> "HashKey":
        """Fresh key of the same purpose, used when the solver restarts"""
        words = np.random.SeedSequence([self.lo, self.hi, _PURPOSE_IDS[self.purpose], counter]).generate_state(2, dtype=np.uint64)
        return HashKey(int(words[0]), int(words[1]), self.purpose)

    @property
    def value(self) -> int:
        return (self.hi << 64) | self.lo

    def hash(self, data: bytes) -> int:
        return keyed_hash(self.lo, self.hi, data)


@dataclass(frozen=True)
class StepSet:
    """Jump sizes n^0..n^d with exact probability masses

    :param base: n
    :param masses: p(n^k) for k = 0..d, exact rationals summing to 1
    """
    base: int
    masses: Tuple[Fraction, ...]
    d: int = field(init=False)
    sizes: Tuple[int, ...] = field(init=False)
    mean: Fraction = field(init=False)
    gamma: Fraction = field(init=False)
    probabilities: Tuple[float, ...] = field(init=False, repr=False)
    thresholds: Tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if self.base < 2:
            raise ValueError(f"Base must be at least 2, got {self.base}.")
        if not self.masses:
            raise ValueError("A step set needs at least one size.")
        if any(p <= 0 for p in self.masses):
            raise ValueError("Every step size needs a positive mass.")
        if sum(self.masses) != 1:
            raise ValueError(f"Masses sum to {sum(self.masses)}, not 1.")
        d = len(self.masses) - 1
        sizes = tuple(self.base ** k for k in range(d + 1))
        cumulative = Fraction(0)
        thresholds: List[int] = []
        for p in self.masses[:-1]:
            cumulative += p
            thresholds.append(int(cumulative * _TWO_64))
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "sizes", sizes)
        object.__setattr__(self, "mean", sum(s * p for s, p in zip(sizes, self.masses)))
        object.__setattr__(self, "gamma", max(max((d + 1) * p, 1 / ((d + 1) * p)) for p in self.masses))
        object.__setattr__(self, "probabilities", tuple(float(p) for p in self.masses))
        object.__setattr__(self, "thresholds", tuple(thresholds))

    @property
    def s_max(self) -> int:
        return self.sizes[-1]

    def tail_mass(self, delta: int) -> float:
        """Sum of p(s) over s > delta"""
        return float(sum(p for s, p in zip(self.sizes, self.masses) if s > delta))

    def to_dict(self) -> dict:
        return {
            "n": self.base,
            "d": self.d,
            "masses": [[p.numerator, p.denominator] for p in self.masses],
            "mean": [self.mean.numerator, self.mean.denominator],
            "gamma": [self.gamma.numerator, self.gamma.denominator],
        }


@dataclass(frozen=True)
class DistinguishedPredicate:
    """Membership test for the distinguished set D, |D|/|G| = density"""
    density: Fraction
    key: HashKey
    threshold: int = field(init=False)

    def __post_init__(self) -> None:
        if not 0 < self.density <= 1:
            raise ValueError(f"Distinguished density must be in (0, 1], got {self.density}.")
        if self.key.purpose != DISTINGUISHED:
            raise ValueError("Distinguished points need a key of their own.")
        threshold = int(self.density * _TWO_64)
        if threshold < 1:
            raise ValueError(f"Distinguished density {self.density} is below 2^-64.")
        object.__setattr__(self, "threshold", threshold)

    def with_key(self, key: HashKey) -> "DistinguishedPredicate":
        return DistinguishedPredicate(self.density, key)


def uniform_step_set(base: int, d: int) -> StepSet:
    return StepSet(base, tuple(Fraction(1, d + 1) for _ in range(d + 1)))


def step_set_from_masses(base: int, masses: Sequence[Fraction]) -> StepSet:
    return StepSet(base, tuple(Fraction(p) for p in masses))


def target_mean(width: int) -> Fraction:
    """sqrt(width)/2, truncated to 21 fractional bits when width is not a square"""
    return sqrt_rational(width) / 2


def guide_exponent(width: int) -> float:
    half_bits = log2(width) / 2
    return half_bits + log2(half_bits) - 2


def uniform_mean(base: int, d: int) -> Fraction:
    return Fraction(sum(base ** k for k in range(d + 1)), d + 1)


def _shifted_masses(base: int, d: int, target: Fraction) -> Optional[Tuple[Fraction, ...]]:
    """Moves mass t between n^d and n^0 so the mean hits target, if gamma stays <= 2

    t > 0 moves mass down from n^d, t < 0 moves it up.
    """
    uniform = Fraction(1, d + 1)
    if d == 0:
        return (Fraction(1),) if target == 1 else None
    shift = (uniform_mean(base, d) - target) / (base ** d - 1)
    if abs(shift) > uniform / 2:
        return None
    masses = [uniform] * (d + 1)
    masses[0] += shift
    masses[-1] -= shift
    return tuple(masses)


def _spread_masses(base: int, d: int, target: Fraction) -> Optional[Tuple[Fraction, ...]]:
    """Moves the mean towards target along the segment from uniform masses to the
    gamma = 2 extreme, where every size sits at half the uniform mass and the
    spare half is stacked on the smallest (or largest) sizes at twice it
    """
    if d == 0:
        return None
    uniform = Fraction(1, d + 1)
    low, high = uniform / 2, 2 * uniform
    start = uniform_mean(base, d)
    extreme = [low] * (d + 1)
    spare = 1 - (d + 1) * low
    order = range(d + 1) if target < start else range(d, -1, -1)
    for k in order:
        extra = min(high - low, spare)
        extreme[k] += extra
        spare -= extra
    reach = start - sum(base ** k * p for k, p in enumerate(extreme))
    fraction = (start - target) / reach
    if not 0 <= fraction <= 1:
        return None
    return tuple(uniform + fraction * (p - uniform) for p in extreme)


def build_step_set(a: int, b: int, base: int = 2, target: Optional[Fraction] = None) -> StepSet:
    """Builds the step set for the interval [a, b]

    d starts at the smallest exponent whose uniform mean reaches the target, then
    a two-point mass shift makes the mean exact. If that would push gamma past 2
    then d + 1 is tried, then d - 1 with the shift running upwards, and finally
    the same exponents with the shift spread over every size.

    :param a: interval start
    :param b: interval end
    :param base: n
    :param target: mean to hit, defaults to target_mean(b - a)
    :return: The step set
    """
    width = b - a
    if width < 16:
        raise ValueError(f"Interval width must be at least 16, got {width}.")
    if base < 2:
        raise ValueError(f"Base must be at least 2, got {base}.")
    if target is None:
        target = target_mean(width)
    d_min = 0
    while uniform_mean(base, d_min) < target:
        d_min += 1
    candidates = [d for d in (d_min, d_min + 1, d_min - 1) if d >= 0]
    for shift in (_shifted_masses, _spread_masses):
        for d in candidates:
            masses = shift(base, d, target)
            if masses is None:
                continue
            step_set = StepSet(base, masses)
            logging.info(f"Built step set base {base}, d={d}, gamma={float(step_set.gamma):.4f}, mean={float(step_set.mean):.4f}")
            if base == 2 and abs(d - guide_exponent(width)) > 2:
                logging.warning(f"Exponent d={d} is more than 2 away from the guide value {guide_exponent(width):.2f}")
            return step_set
    raise InfeasibleTarget(width, base)


def mean_step(step_set: StepSet) -> Fraction:
    return step_set.mean


def assign_step(step_set: StepSet, key: HashKey, encoded: bytes) -> int:
    """Deterministic step for an encoded element: the keyed hash read as a
    fraction of 2^64 picks the size whose cumulative mass interval contains it

    :param step_set: the step set
    :param key: step-assignment key
    :param encoded: group.encode output
    :return: The step size
    """
    return step_set.sizes[bisect_right(step_set.thresholds, key.hash(encoded))]


def is_distinguished(predicate: DistinguishedPredicate, encoded: bytes) -> bool:
    return predicate.key.hash(encoded) < predicate.threshold


def distinguished_predicate(width: int, c: float, key: HashKey) -> DistinguishedPredicate:
    """Predicate with density c/sqrt(width), clamped to 1

    :param width: b - a
    :param c: distinguished point constant
    :param key: distinguished-purpose key
    :return: The predicate
    """
    density = min(Fraction(1), Fraction(c) / sqrt_rational(width))
    return DistinguishedPredicate(density, key)
