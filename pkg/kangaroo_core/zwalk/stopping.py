"""Nearly uniform intersection times built on a lazy walk

The lazy walk draws s by mass and hops by s half the time. delta_s records the
hop made the first time each non-maximal size is drawn; once all are recorded
their sum delta is uniform on [0, s_max), and accepting with probability
P(step > delta) makes every y >= I_T = position - delta visited with
probability exactly 1/S.

Base n replaces single steps by blocks of n - 1 steps: a block where one size s
was drawn throughout, hopping m times, records delta_s = m*s with probability
1/C(n-1, m).
"""
from dataclasses import dataclass
from math import comb
from typing import Dict, Optional, Tuple

import numpy as np

from kangaroo_core.exceptions import HorizonExceeded
from kangaroo_core.stepset import StepSet
from kangaroo_core.zwalk.walks import StepStream, WalkTrail


_SAFETY_STEPS = 10 ** 9


@dataclass(frozen=True)
class StoppingOutcome:
    T: int
    tentative_rounds: int
    delta: int
    anchor: int
    position: int


@dataclass(frozen=True)
class IntersectionSample:
    """One run of the X walk up to min(T, horizon)"""
    steps: int
    collisions: int
    reached: bool
    outcome: Optional[StoppingOutcome]


class LazyWalk:
    """Y walk that hops by the drawn size with probability 1/2

    :param stream: draws for this walk
    :param start: Y_0
    """
    def __init__(self, stream: StepStream, start: int = 0) -> None:
        self.stream = stream
        self.steps = 0
        self.trail = WalkTrail(start)

    @property
    def position(self) -> int:
        return self.trail.frontier

    def step(self) -> Tuple[int, bool]:
        """One lazy step

        :return: The drawn size and whether the walk hopped by it
        """
        size = self.stream.step()
        self.steps += 1
        hopped = self.stream.coin()
        if hopped:
            self.trail.hop(size)
        return size, hopped


class _TailMasses:
    def __init__(self, step_set: StepSet) -> None:
        self.step_set = step_set
        self._cache: Dict[int, float] = {}

    def __call__(self, delta: int) -> float:
        if delta not in self._cache:
            self._cache[delta] = self.step_set.tail_mass(delta)
        return self._cache[delta]


def _accept(walk: LazyWalk, deltas: Dict[int, int], tail: _TailMasses, rounds: int) -> Optional[StoppingOutcome]:
    delta = sum(deltas.values())
    if walk.stream.uniform() < tail(delta):
        return StoppingOutcome(walk.steps, rounds, delta, walk.position - delta, walk.position)
    return None


def _stop_base_2(walk: LazyWalk, step_set: StepSet) -> StoppingOutcome:
    coupons = set(step_set.sizes[:-1])
    tail = _TailMasses(step_set)
    deltas: Dict[int, int] = {}
    rounds = 0
    while True:
        if len(deltas) == len(coupons):
            outcome = _accept(walk, deltas, tail, rounds)
            if outcome is not None:
                return outcome
            rounds += 1
            deltas.clear()
        if walk.steps >= _SAFETY_STEPS:
            raise HorizonExceeded(_SAFETY_STEPS)
        size, hopped = walk.step()
        if size in coupons and size not in deltas:
            deltas[size] = size if hopped else 0


def _stop_base_n(walk: LazyWalk, step_set: StepSet) -> StoppingOutcome:
    block = step_set.base - 1
    coupons = set(step_set.sizes[:-1])
    tail = _TailMasses(step_set)
    deltas: Dict[int, int] = {}
    rounds = 0
    while True:
        if len(deltas) == len(coupons):
            outcome = _accept(walk, deltas, tail, rounds)
            if outcome is not None:
                return outcome
            rounds += 1
            deltas.clear()
        if walk.steps >= _SAFETY_STEPS:
            raise HorizonExceeded(_SAFETY_STEPS)
        size, hops = _block(walk, block)
        if size is None or size not in coupons or size in deltas:
            continue
        ways = comb(block, hops)
        if ways == 1 or walk.stream.uniform() * ways < 1:
            deltas[size] = hops * size


def _block(walk: LazyWalk, block: int) -> Tuple[Optional[int], int]:
    """Runs block lazy steps; returns the size if the same one was drawn throughout, and the hop count"""
    first = None
    same = True
    hops = 0
    for index in range(block):
        size, hopped = walk.step()
        if index == 0:
            first = size
        elif size != first:
            same = False
        hops += hopped
    return (first if same else None), hops


def _stop(walk: LazyWalk, step_set: StepSet) -> StoppingOutcome:
    if step_set.base == 2:
        return _stop_base_2(walk, step_set)
    return _stop_base_n(walk, step_set)


def run_stopping_time(step_set: StepSet, rng: np.random.Generator, start: int = 0) -> StoppingOutcome:
    """Runs the base-2 construction on a fresh lazy walk from start

    :param step_set: powers of two
    :param rng: generator for the walk and the acceptance draws
    :param start: Y_0
    :return: The accepted outcome
    """
    if step_set.base != 2:
        raise ValueError(f"run_stopping_time needs base 2, got {step_set.base}. Use run_stopping_time_base_n.")
    return _stop_base_2(LazyWalk(StepStream(step_set, rng), start), step_set)


def run_stopping_time_base_n(step_set: StepSet, rng: np.random.Generator, start: int = 0) -> StoppingOutcome:
    """Runs the block construction for any base; base 2 gives the same outcome as run_stopping_time"""
    return _stop_base_n(LazyWalk(StepStream(step_set, rng), start), step_set)


def visit_window(step_set: StepSet, window_len: int, rng: np.random.Generator) -> np.ndarray:
    """Which of I_T .. I_T + window_len - 1 the walk visits at or after T, for one stopped walk

    :return: Boolean array, index k for position I_T + k
    """
    walk = LazyWalk(StepStream(step_set, rng))
    outcome = _stop(walk, step_set)
    # only visits from step T on count
    walk.trail = WalkTrail(outcome.position)
    while walk.position < outcome.anchor + window_len:
        walk.step()
    return np.array([outcome.anchor + k in walk.trail for k in range(window_len)], dtype=bool)


def hitting_profile(step_set: StepSet, trials: int, window_len: int, rng: np.random.Generator) -> np.ndarray:
    """Empirical P(y visited) for y in [I_T, I_T + window_len), which should be 1/S throughout

    :param step_set: step set
    :param trials: independent stopped walks
    :param window_len: at most 8 * s_max
    :param rng: parent generator, one child per trial
    :return: Array of visit frequencies
    """
    if window_len > 8 * step_set.s_max:
        raise ValueError(f"Window of {window_len} exceeds 8 * s_max = {8 * step_set.s_max}.")
    if trials < 1:
        raise ValueError(f"Trials must be positive, got {trials}.")
    visits = np.zeros(window_len, dtype=np.int64)
    for child in rng.spawn(trials):
        visits += visit_window(step_set, window_len, child)
    return visits / trials


def intersection_time(
    step_set: StepSet,
    x0: int,
    y0: int,
    rng: np.random.Generator,
    horizon: Optional[int] = None
) -> IntersectionSample:
    """Runs X until T = min{i >= 1 : X_i >= I_T} (or the horizon), counting collisions with Y on the way

    :param step_set: step set
    :param x0: X_0
    :param y0: Y_0, the walk the stopping construction runs on
    :param rng: parent generator, split into one substream per walk
    A single step size leaves nothing to randomise, so there is no stopping
    time: both walks move by 1 and the run always lasts the full horizon.

    :param horizon: truncation M, None for no truncation; required when d = 0
    :return: Steps taken, collisions among X_1..X_steps, and whether T was reached
    """
    if step_set.d == 0:
        if horizon is None:
            raise ValueError("A single step size has no stopping time; pass a horizon.")
        collisions = sum(x0 + i >= y0 for i in range(1, horizon + 1))
        return IntersectionSample(horizon, collisions, False, None)
    y_rng, x_rng = rng.spawn(2)
    walk = LazyWalk(StepStream(step_set, y_rng), y0)
    outcome = _stop(walk, step_set)
    x_steps = StepStream(step_set, x_rng)
    x = x0
    steps = collisions = 0
    while True:
        steps += 1
        x += x_steps.step()
        while walk.position < x:
            walk.step()
        collisions += x in walk.trail
        if x >= outcome.anchor:
            return IntersectionSample(steps, collisions, True, outcome)
        if horizon is not None and steps >= horizon:
            return IntersectionSample(steps, collisions, False, outcome)


def block_definition_rate(step_set: StepSet, size: int, blocks: int, rng: np.random.Generator) -> float:
    """Fraction of independent blocks that would define delta_size in the base-n construction"""
    if size not in step_set.sizes[:-1]:
        raise ValueError(f"Size {size} is not a non-maximal step size.")
    block = step_set.base - 1
    walk = LazyWalk(StepStream(step_set, rng))
    defined = 0
    for _ in range(blocks):
        drawn, hops = _block(walk, block)
        if drawn != size:
            continue
        ways = comb(block, hops)
        if ways == 1 or walk.stream.uniform() * ways < 1:
            defined += 1
    return defined / blocks
