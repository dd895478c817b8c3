"""Monte Carlo estimators built on the stopping construction"""
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

import numpy as np

from kangaroo_core.stepset import StepSet
from kangaroo_core.zwalk.bounds import hoeffding_sample_count
from kangaroo_core.zwalk.stopping import intersection_time


_START_GRID = 16


@dataclass(frozen=True)
class BEpsilonRun:
    """One trial of the B_eps estimator: one truncated run per start, in b_epsilon_starts order"""
    collisions: Tuple[int, ...]
    steps: Tuple[int, ...]
    reached: Tuple[bool, ...]


@dataclass(frozen=True)
class BEpsilonEstimate:
    """B_eps as the worst start's mean collision count before min{T, M}

    :param estimate: maximum over starts
    :param per_start: mean collision count per Y_0 - X_0
    :param stderr: standard error per Y_0 - X_0
    :param mean_time: mean of min{T, M} per Y_0 - X_0
    :param exceed_probability: fraction of runs, over all starts, truncated at M
    :param burn_in: mean_time at the worst start divided by the mean step
    """
    estimate: float
    worst_start: int
    per_start: Dict[int, float]
    stderr: Dict[int, float]
    mean_time: Dict[int, float]
    exceed_probability: float
    burn_in: float


def default_horizon(step_set: StepSet) -> int:
    return 64 * (step_set.d + 1)


def b_epsilon_starts(step_set: StepSet, count: int = _START_GRID) -> List[int]:
    """Offsets Y_0 - X_0 on an even grid over [0, s_max), always including 0"""
    return sorted({k * step_set.s_max // count for k in range(count)})


def b_epsilon_run(step_set: StepSet, m: int, rng: np.random.Generator) -> BEpsilonRun:
    """Runs intersection_time once from every start, truncated at M

    :param step_set: step set
    :param m: horizon M
    :param rng: generator for this trial, one child per start
    :return: Per-start collisions, steps and whether T was reached
    """
    starts = b_epsilon_starts(step_set)
    samples = [intersection_time(step_set, 0, start, child, horizon=m) for start, child in zip(starts, rng.spawn(len(starts)))]
    return BEpsilonRun(
        collisions=tuple(sample.collisions for sample in samples),
        steps=tuple(sample.steps for sample in samples),
        reached=tuple(sample.reached for sample in samples),
    )


def summarize_b_epsilon(step_set: StepSet, runs: Sequence[BEpsilonRun]) -> BEpsilonEstimate:
    """Aggregates trials into per-start means and picks the worst start"""
    if not runs:
        raise ValueError("Need at least one B_eps trial.")
    starts = b_epsilon_starts(step_set)
    collisions = np.array([run.collisions for run in runs], dtype=float)
    steps = np.array([run.steps for run in runs], dtype=float)
    reached = np.array([run.reached for run in runs], dtype=bool)
    trials = len(runs)
    means = collisions.mean(axis=0)
    errors = collisions.std(axis=0, ddof=1) / np.sqrt(trials) if trials > 1 else np.zeros(len(starts))
    times = steps.mean(axis=0)
    per_start = {start: float(value) for start, value in zip(starts, means)}
    worst = max(starts, key=lambda start: per_start[start])
    mean_time = {start: float(value) for start, value in zip(starts, times)}
    return BEpsilonEstimate(
        estimate=per_start[worst],
        worst_start=worst,
        per_start=per_start,
        stderr={start: float(value) for start, value in zip(starts, errors)},
        mean_time=mean_time,
        exceed_probability=float(np.count_nonzero(~reached)) / reached.size,
        burn_in=mean_time[worst] / float(step_set.mean),
    )


def estimate_b_epsilon(step_set: StepSet, m: int, trials: int, rng: np.random.Generator) -> BEpsilonEstimate:
    """Estimates B_eps with the stopping time truncated at M

    :param step_set: step set
    :param m: horizon M, at least 1
    :param trials: runs per start
    :param rng: parent generator, one child per trial
    :return: The estimate with per-start detail
    """
    if m < 1:
        raise ValueError(f"Horizon must be at least 1, got {m}.")
    if trials < 1:
        raise ValueError(f"Trials must be positive, got {trials}.")
    return summarize_b_epsilon(step_set, [b_epsilon_run(step_set, m, child) for child in rng.spawn(trials)])


def epsilon_hat(profile: np.ndarray, sbar: float) -> float:
    """Largest relative deviation of a hitting profile from 1/S"""
    return float(np.max(np.abs(profile * sbar - 1.0)))


def hoeffding_shortfall_rate(step_set: StepSet, n: float, eps: float, repetitions: int, rng: np.random.Generator) -> float:
    """Fraction of repetitions where M i.i.d. steps sum below (1+N) s_max, M from hoeffding_sample_count"""
    m = hoeffding_sample_count(step_set.s_max, float(step_set.mean), n, eps)
    sizes = np.asarray(step_set.sizes, dtype=np.float64)
    shortfalls = 0
    done = 0
    while done < repetitions:
        chunk = min(10_000, repetitions - done)
        sums = rng.choice(sizes, size=(chunk, m), p=step_set.probabilities).sum(axis=1)
        shortfalls += int(np.count_nonzero(sums < (1 + n) * step_set.s_max))
        done += chunk
    return shortfalls / repetitions
