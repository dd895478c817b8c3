"""Multi-step transition structure of the step distribution

c_i(v) counts the ordered i-tuples of step sizes summing to v; with uniform
masses the i-step transition probability is c_i(v)/(d+1)^i.
"""
import re
from collections import defaultdict
from typing import Dict, Optional, Sequence

from kangaroo_core.exceptions import Intractable
from kangaroo_core.stepset import StepSet


TRACTABLE_SPAN = 64


def _compositions(i: int, sizes: Sequence[int], limit: Optional[int] = None) -> Dict[int, int]:
    counts: Dict[int, int] = {0: 1}
    for _ in range(i):
        following: Dict[int, int] = defaultdict(int)
        for total, ways in counts.items():
            for size in sizes:
                if limit is None or total + size <= limit:
                    following[total + size] += ways
        counts = following
    return counts


def count_compositions(value: int, i: int, step_set: StepSet) -> int:
    """Number of ordered i-tuples of step sizes summing to value

    :param value: target sum, non-negative
    :param i: tuple length, at least 1
    :param step_set: supplies the sizes
    :return: The exact count
    """
    if i < 1 or value < 0:
        raise ValueError(f"Need i >= 1 and value >= 0, got i={i}, value={value}.")
    return _compositions(i, step_set.sizes, limit=value).get(value, 0)


def max_compositions(i: int, step_set: StepSet) -> int:
    """c_i, the largest composition count over all values"""
    if i < 1:
        raise ValueError(f"Need i >= 1, got {i}.")
    return max(_compositions(i, step_set.sizes).values())


def max_transition_prob(step_set: StepSet, i: int) -> float:
    """max over v of P^i(0, v) under the actual masses

    :param step_set: step distribution
    :param i: number of steps, with i * d at most 64
    :return: The largest i-step transition probability
    """
    if i < 1:
        raise ValueError(f"Need i >= 1, got {i}.")
    if i * step_set.d > TRACTABLE_SPAN:
        raise Intractable(i, step_set.d)
    probabilities: Dict[int, float] = {0: 1.0}
    for _ in range(i):
        following: Dict[int, float] = defaultdict(float)
        for total, mass in probabilities.items():
            for size, p in zip(step_set.sizes, step_set.probabilities):
                following[total + size] += mass * p
        probabilities = following
    return max(probabilities.values())


def contract_zero_runs(value: int, i: int) -> int:
    """Shortens every internal run of at least i zero bits to i - 1 zeros

    For powers of two a set bit can only come from the i - 1 positions below
    it, so this leaves c_i(value) unchanged.
    """
    if i < 1:
        raise ValueError(f"Need i >= 1, got {i}.")
    bits = re.sub(r"(?<=1)0{%d,}(?=1)" % i, "0" * (i - 1), bin(value)[2:])
    return int(bits, 2)


def collision_excess(step_set: StepSet, span: int = 8) -> float:
    """Extra meetings two walks started at the same point share, beyond one per
    mean step length

    Sums u(v)^2 - 1/mean^2 for v = 1..span * s_max, where u(v) is the chance a
    walk from 0 lands on v. The sum is 0 for a single size and shrinks as the
    step distribution gets flatter.

    :param step_set: step distribution
    :param span: how many multiples of s_max to sum over
    :return: The excess
    """
    if span < 1:
        raise ValueError(f"Need span >= 1, got {span}.")
    length = span * step_set.s_max
    steps = list(zip(step_set.sizes, step_set.probabilities))
    visits = [1.0] + [0.0] * length
    for v in range(1, length + 1):
        visits[v] = sum(p * visits[v - s] for s, p in steps if s <= v)
    sbar = float(step_set.mean)
    return sum(u * u for u in visits[1:]) - length / sbar ** 2
