"""Counter-based random streams keyed by (master seed, trial, role)

Every trial derives its own Philox streams, so trials can run in any order
or process and still draw exactly the same numbers.
"""
import numpy as np


ROLES = {
    "instance": 1,
    "keys": 2,
    "first-intersection": 3,
    "hitting": 4,
    "b-epsilon": 5,
}


def trial_seed(master_seed: int, trial: int) -> int:
    """64-bit seed identifying one trial, written to the CSV so a trial can be replayed alone"""
    if master_seed < 0 or trial < 0:
        raise ValueError("Seeds and trial indices must be non-negative.")
    return int(np.random.SeedSequence([master_seed, trial]).generate_state(1, dtype=np.uint64)[0])


def stream_from_trial_seed(seed: int, role: str) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, ROLES[role]])))


def stream(master_seed: int, trial: int, role: str) -> np.random.Generator:
    """The generator for one role of one trial

    :param master_seed: experiment seed
    :param trial: trial index
    :param role: one of ROLES
    :return: A Philox-backed generator
    """
    return stream_from_trial_seed(trial_seed(master_seed, trial), role)
