from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from kangaroo_core.exceptions import InsufficientSamples


Z_95 = 1.96


@dataclass(frozen=True)
class Summary:
    mean: float
    stderr: float
    ci95: Tuple[float, float]


def summarize(samples: Sequence[float]) -> Summary:
    """Sample mean, standard error from the unbiased variance, and mean +- 1.96 stderr

    :param samples: at least two numbers
    :return: The summary
    """
    if len(samples) < 2:
        raise InsufficientSamples(len(samples))
    values = np.asarray(samples, dtype=np.float64)
    mean = float(values.mean())
    stderr = float(values.std(ddof=1) / np.sqrt(len(values)))
    return Summary(mean, stderr, (mean - Z_95 * stderr, mean + Z_95 * stderr))
