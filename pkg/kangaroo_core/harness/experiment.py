"""Seeded Monte Carlo experiments over the solver and the walk laboratory

A trial is a pure function of (spec, trial index): its random numbers come
from streams keyed by the trial seed, so serial and parallel runs produce the
same samples. Results are merged by trial index.
"""
import logging
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import asdict, dataclass, field, replace
from typing import Any, Dict, List, Optional

import numpy as np
import psutil
from tqdm import tqdm

from kangaroo_core.exceptions import InsufficientSamples, SolveFailed
from kangaroo_core.groups import MERSENNE_61, BaseGroup, make_group
from kangaroo_core.harness.rng import stream_from_trial_seed, trial_seed
from kangaroo_core.harness.stats import summarize
from kangaroo_core.solver import SolverKeys, closed_form_cost, heuristic_cost, solve
from kangaroo_core.stepset import StepSet, build_step_set, distinguished_predicate, uniform_step_set
from kangaroo_core.zwalk import (
    BEpsilonRun,
    b_epsilon_leading_bound,
    b_epsilon_run,
    b_epsilon_starts,
    b_epsilon_upper_bound,
    birthday_bounds,
    collision_excess,
    default_horizon,
    epsilon_hat,
    first_intersection,
    max_transition_prob,
    summarize_b_epsilon,
    truncated_epsilon,
    visit_window,
)
from kangaroo_core.zwalk.transitions import TRACTABLE_SPAN


SOLVE_KINDS = ("solve-average", "solve-worst", "base-n-solve")
SIMULATION_KINDS = ("hitting", "b-epsilon", "sandwich")
KINDS = SOLVE_KINDS + SIMULATION_KINDS
SCHEMA_VERSION = 1
MAX_FAILURE_RATE = 0.01
STORE_SIZE_FACTOR = 50
CLUSTERING_MAX_SIZE = 1 << 16


@dataclass(frozen=True)
class ExperimentSpec:
    """Everything that determines an experiment's results. Worker count is deliberately absent"""
    kind: str
    b: int
    trials: int
    master_seed: int
    a: int = 0
    base: int = 2
    c: float = 64
    group_kind: str = "mul"
    modulus: int = MERSENNE_61
    generator: int = 37
    order: int = MERSENNE_61 - 1
    uniform_d: Optional[int] = None
    horizon: Optional[int] = None
    output: Optional[str] = None

    def validate(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"Unknown experiment kind {self.kind!r}, expected one of {', '.join(KINDS)}.")
        if self.trials < 1:
            raise ValueError(f"Trials must be positive, got {self.trials}.")
        if self.b <= self.a:
            raise ValueError(f"Interval [{self.a}, {self.b}] is empty.")
        if self.kind in SOLVE_KINDS and self.order < 8 * (self.b - self.a):
            raise ValueError(f"Group order {self.order} must be at least 8(b-a) = {8 * (self.b - self.a)}.")

    @property
    def width(self) -> int:
        return self.b - self.a

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class TrialResult:
    index: int
    seed: int
    value: Optional[float]
    restarts: int = 0
    error: Optional[str] = None
    data: Dict[str, Any] = field(default_factory=dict)


@dataclass
class ExperimentReport:
    spec: ExperimentSpec
    trials: List[TrialResult]
    mean: Optional[float]
    stderr: Optional[float]
    ci95: Optional[List[float]]
    reference: float
    relative_deviation: Optional[float]
    extras: Dict[str, Any]
    status: str
    duration_seconds: float = 0.0

    @property
    def samples(self) -> List[float]:
        return [trial.value for trial in self.trials if trial.value is not None]

    @property
    def failures(self) -> List[int]:
        return [trial.index for trial in self.trials if trial.error is not None]

    def to_dict(self) -> Dict[str, Any]:
        """Stable key order; duration_seconds is the only field that differs between identical runs"""
        return {
            "schema": SCHEMA_VERSION,
            "spec": self.spec.to_dict(),
            "status": self.status,
            "trials": len(self.trials),
            "failures": self.failures,
            "mean": self.mean,
            "stderr": self.stderr,
            "ci95": self.ci95,
            "reference": self.reference,
            "relative_deviation": self.relative_deviation,
            "extras": self.extras,
            "samples": self.samples,
            "duration_seconds": self.duration_seconds,
        }


@dataclass(frozen=True)
class _Context:
    spec: ExperimentSpec
    step_set: StepSet
    group: Optional[BaseGroup]


def default_workers() -> int:
    return psutil.cpu_count(logical=False) or 1


def experiment_step_set(spec: ExperimentSpec) -> StepSet:
    if spec.uniform_d is not None:
        return uniform_step_set(spec.base, spec.uniform_d)
    return build_step_set(spec.a, spec.b, spec.base)


def _solve_trial(context: _Context, index: int, seed: int) -> TrialResult:
    spec, step_set, group = context.spec, context.step_set, context.group
    if group is None:
        raise ValueError("Solve trials need a group.")
    instance = stream_from_trial_seed(seed, "instance")
    if spec.kind == "solve-worst":
        x = spec.a
    else:
        x = spec.a + int(instance.integers(0, spec.width + 1))
    h = group.pow(group.generator, x)
    keys = SolverKeys.from_seed(int(stream_from_trial_seed(seed, "keys").integers(0, np.iinfo(np.int64).max)))
    predicate = distinguished_predicate(spec.width, spec.c, keys.distinguished)
    try:
        result = solve(group, h, spec.a, spec.b, step_set, predicate, keys)
    except SolveFailed as failed:
        logging.warning(f"Trial {index} failed: {failed.user_message}")
        return TrialResult(index, seed, None, error=failed.user_message)
    return TrialResult(index, seed, float(result.walk_ops), result.restarts, data={
        "precomputation_ops": result.precomputation_ops,
        "group_ops": result.group_ops,
        "store_size": result.store_size,
    })


def _b_epsilon_run(context: _Context, seed: int) -> BEpsilonRun:
    horizon = context.spec.horizon or default_horizon(context.step_set)
    return b_epsilon_run(context.step_set, horizon, stream_from_trial_seed(seed, "b-epsilon"))


def run_trial(context: _Context, index: int) -> TrialResult:
    """One trial of any kind; a pure function of (spec, index)"""
    spec, step_set = context.spec, context.step_set
    seed = trial_seed(spec.master_seed, index)
    if spec.kind in SOLVE_KINDS:
        return _solve_trial(context, index, seed)
    window = 8 * step_set.s_max
    if spec.kind == "hitting":
        visits = visit_window(step_set, window, stream_from_trial_seed(seed, "hitting"))
        return TrialResult(index, seed, float(visits.mean()), data={"visits": visits})
    if spec.kind == "b-epsilon":
        return TrialResult(index, seed, None, data={"b_epsilon": _b_epsilon_run(context, seed)})
    steps = first_intersection(step_set, 0, 0, stream_from_trial_seed(seed, "first-intersection"))
    return TrialResult(index, seed, float(steps), data={
        "b_epsilon": _b_epsilon_run(context, seed),
        "visits": visit_window(step_set, window, stream_from_trial_seed(seed, "hitting")),
    })


def _run_trials(context: _Context, workers: int, progress: bool) -> List[TrialResult]:
    trials = context.spec.trials
    results: Dict[int, TrialResult] = {}
    with tqdm(total=trials, desc="Trial progress", unit=" trials", disable=not progress) as bar:
        if workers <= 1:
            for index in range(trials):
                results[index] = run_trial(context, index)
                bar.update(1)
        else:
            with ProcessPoolExecutor(max_workers=workers) as executor:
                futures = {executor.submit(run_trial, context, index): index for index in range(trials)}
                for future in as_completed(futures):
                    results[futures[future]] = future.result()
                    bar.update(1)
    return [results[index] for index in range(trials)]


def _transition_bound(step_set: StepSet, horizon: int, eps: float) -> float:
    """Upper bound on B_eps from the transition maxima

    Beyond the largest tractable i the last exact max P^i is reused; max P^i is
    nonincreasing in i.
    """
    cap = horizon if step_set.d == 0 else max(1, TRACTABLE_SPAN // step_set.d)
    maxima = [max_transition_prob(step_set, i) for i in range(1, min(horizon, cap) + 1)]
    maxima += [maxima[-1]] * (horizon - len(maxima))
    return b_epsilon_upper_bound(maxima, horizon, step_set.s_max, float(step_set.mean), eps)


def _b_epsilon_extras(trials: List[TrialResult], step_set: StepSet) -> Dict[str, Any]:
    starts = b_epsilon_starts(step_set)
    estimate = summarize_b_epsilon(step_set, [trial.data["b_epsilon"] for trial in trials])
    return {
        "starts": starts,
        "per_start": [estimate.per_start[start] for start in starts],
        "worst_start": estimate.worst_start,
        "worst_column": starts.index(estimate.worst_start),
        "b_epsilon": estimate.estimate,
        "mean_time": max(estimate.mean_time.values()),
        "exceed_probability": estimate.exceed_probability,
        "burn_in": estimate.burn_in,
    }


def _aggregate(context: _Context, trials: List[TrialResult]) -> ExperimentReport:
    spec, step_set = context.spec, context.step_set
    sbar = float(step_set.mean)
    extras: Dict[str, Any] = {"step_set": step_set.to_dict()}
    succeeded = [trial for trial in trials if trial.error is None]
    if spec.kind in SOLVE_KINDS:
        gap = "worst" if spec.kind == "solve-worst" else "average"
        reference = heuristic_cost(spec.width, sbar, spec.c, gap)
        extras["closed_form"] = closed_form_cost(spec.width, spec.c, gap)
        if step_set.s_max <= CLUSTERING_MAX_SIZE:
            excess = collision_excess(step_set)
            extras["collision_excess"] = excess
            extras["clustered_reference"] = heuristic_cost(spec.width, sbar, spec.c, gap, clustering=excess)
        if succeeded:
            extras["mean_precomputation_ops"] = float(np.mean([trial.data["precomputation_ops"] for trial in succeeded]))
            extras["max_store_size"] = max(trial.data["store_size"] for trial in succeeded)
            extras["store_within_bound"] = extras["max_store_size"] <= STORE_SIZE_FACTOR * spec.c
    elif spec.kind == "hitting":
        reference = 1 / sbar
        profile = np.mean([trial.data["visits"] for trial in trials], axis=0)
        sigma = np.sqrt(reference * (1 - reference) / len(trials))
        extras["epsilon_hat"] = epsilon_hat(profile, sbar)
        extras["max_abs_z"] = float(np.max(np.abs(profile - reference)) / sigma) if sigma > 0 else 0.0
        extras["profile"] = [float(value) for value in profile]
    else:
        summary = _b_epsilon_extras(trials, step_set)
        horizon = spec.horizon or default_horizon(step_set)
        extras.update(summary)
        extras["horizon"] = horizon
        if spec.kind == "b-epsilon":
            reference = 1 / (step_set.d + 1)
            eps = truncated_epsilon(0.0, summary["exceed_probability"], sbar)
            extras["leading_bound"] = b_epsilon_leading_bound(float(step_set.gamma), step_set.d)
            extras["transition_bound"] = _transition_bound(step_set, horizon, eps)
            trials = [replace(trial, value=float(trial.data["b_epsilon"].collisions[summary["worst_column"]])) for trial in trials]
        else:
            reference = sbar
            profile = np.mean([trial.data["visits"] for trial in trials], axis=0)
            eps_hat = epsilon_hat(profile, sbar)
            eps = truncated_epsilon(eps_hat, summary["exceed_probability"], sbar)
            extras["epsilon_hat"] = eps_hat
            extras["epsilon"] = eps
            if eps < 1:
                lower, upper = birthday_bounds(sbar, summary["mean_time"], summary["b_epsilon"], eps)
                extras["lower"], extras["upper"] = lower, upper
    samples = [trial.value for trial in trials if trial.value is not None]
    mean = stderr = None
    ci95 = None
    try:
        summary_stats = summarize(samples)
        mean, stderr, ci95 = summary_stats.mean, summary_stats.stderr, list(summary_stats.ci95)
    except InsufficientSamples:
        if samples:
            mean = float(samples[0])
    if spec.kind == "sandwich" and mean is not None and "upper" in extras:
        extras["contained"] = extras["lower"] <= mean <= extras["upper"]
    failures = len(trials) - len(succeeded)
    status = "failed" if failures > MAX_FAILURE_RATE * len(trials) else "ok"
    deviation = None if mean is None else (mean - reference) / reference
    return ExperimentReport(spec, trials, mean, stderr, ci95, reference, deviation, extras, status)


def run_experiment(spec: ExperimentSpec, workers: int = 1, progress: bool = False) -> ExperimentReport:
    """Runs every trial of an experiment and summarises it

    :param spec: the experiment
    :param workers: processes to spread trials over; results do not depend on it
    :param progress: show a progress bar
    :return: The report, status "failed" when more than 1% of trials failed
    """
    spec.validate()
    logging.info(f"Running {spec.kind} experiment: width {spec.width}, base {spec.base}, {spec.trials} trials, seed {spec.master_seed}")
    started = time.perf_counter()
    step_set = experiment_step_set(spec)
    group = make_group(spec.group_kind, spec.modulus, spec.generator, spec.order) if spec.kind in SOLVE_KINDS else None
    context = _Context(spec, step_set, group)
    trials = _run_trials(context, workers, progress)
    report = _aggregate(context, trials)
    report.duration_seconds = time.perf_counter() - started
    if report.failures:
        logging.warning(f"{len(report.failures)} of {spec.trials} trials failed")
    logging.info(f"Experiment finished: mean {report.mean}, reference {report.reference:.4f}, status {report.status}")
    return report
