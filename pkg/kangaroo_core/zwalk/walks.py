"""Increasing walks on the integers and their first intersection

Both walks take i.i.d. steps from a StepSet. Y is advanced lazily, only as far
as X's frontier, and X checks each landing spot against Y's trail.
"""
from typing import List, Set

import numpy as np

from kangaroo_core.exceptions import HorizonExceeded
from kangaroo_core.stepset import StepSet


_BATCH = 256
_PRUNE_AT = 4096
_HORIZON_FACTOR = 10_000


class StepStream:
    """Buffered draws from one generator: step sizes by mass, fair coins and uniforms

    :param step_set: step distribution
    :param rng: generator owned by this stream
    """
    def __init__(self, step_set: StepSet, rng: np.random.Generator) -> None:
        self.rng = rng
        self._sizes = np.asarray(step_set.sizes, dtype=object)
        self._cumulative = np.cumsum(step_set.probabilities)
        self._last = len(step_set.sizes) - 1
        self._steps: List[int] = []
        self._coins: List[bool] = []
        self._uniforms: List[float] = []

    def step(self) -> int:
        if not self._steps:
            indices = np.minimum(np.searchsorted(self._cumulative, self.rng.random(_BATCH), side="right"), self._last)
            self._steps = self._sizes[indices].tolist()[::-1]
        return self._steps.pop()

    def coin(self) -> bool:
        if not self._coins:
            self._coins = (self.rng.random(_BATCH) < 0.5).tolist()[::-1]
        return self._coins.pop()

    def uniform(self) -> float:
        if not self._uniforms:
            self._uniforms = self.rng.random(_BATCH).tolist()[::-1]
        return self._uniforms.pop()


class WalkTrail:
    """Positions visited by an increasing walk, with membership tests

    :param start: Y_0
    """
    def __init__(self, start: int) -> None:
        self.frontier = start
        self._visited: Set[int] = {start}

    def hop(self, step: int) -> None:
        self.frontier += step
        self._visited.add(self.frontier)

    def __contains__(self, position: int) -> bool:
        return position in self._visited

    def __len__(self) -> int:
        return len(self._visited)

    def prune(self, below: int) -> None:
        """Forgets positions below a bound nothing can land on any more"""
        if len(self._visited) > _PRUNE_AT:
            self._visited = {y for y in self._visited if y >= below}


def first_intersection(step_set: StepSet, x0: int, y0: int, rng: np.random.Generator) -> int:
    """min{i > 0 : X_i = Y_j for some j}

    :param step_set: step distribution of both walks
    :param x0: X_0
    :param y0: Y_0, normally below x0 + s_max
    :param rng: parent generator, split into one substream per walk
    :return: The number of X steps until the first intersection
    """
    x_rng, y_rng = rng.spawn(2)
    x_steps, y_steps = StepStream(step_set, x_rng), StepStream(step_set, y_rng)
    trail = WalkTrail(y0)
    horizon = int(_HORIZON_FACTOR * step_set.mean) + max(0, y0 - x0)
    x = x0
    for i in range(1, horizon + 1):
        x += x_steps.step()
        while trail.frontier < x:
            trail.hop(y_steps.step())
        if x in trail:
            return i
        trail.prune(x)
    raise HorizonExceeded(horizon)


def visit_profile(
    step_set: StepSet,
    trials: int,
    window_len: int,
    lazy: bool,
    rng: np.random.Generator,
    start: int = 0
) -> np.ndarray:
    """Fraction of trials whose walk visits each of start .. start + window_len - 1

    :param lazy: hop with probability 1/2 per drawn step instead of always
    :return: Array of visit frequencies, index k for position start + k
    """
    if trials < 1:
        raise ValueError(f"Trials must be positive, got {trials}.")
    visits = np.zeros(window_len, dtype=np.int64)
    for child in rng.spawn(trials):
        steps = StepStream(step_set, child)
        position = start
        while position < start + window_len:
            visits[position - start] += 1
            size = steps.step()
            if lazy:
                while not steps.coin():
                    size = steps.step()
            position += size
    return visits / trials
