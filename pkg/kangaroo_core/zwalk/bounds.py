"""Closed forms for the intersection-time bounds

Everything here is a formula evaluator; the simulations that feed it live in
stopping.py and estimators.py.
"""
from math import ceil, exp, log, sqrt
from typing import Sequence, Tuple


TOLERANCE = 1e-12


def birthday_bounds(sbar: float, tbar: float, b: float, eps: float) -> Tuple[float, float]:
    """Lower and upper bounds on E min{i > 0 : X_i = Y_j for some j}

    :param sbar: mean step
    :param tbar: mean nearly uniform intersection time
    :param b: B_eps
    :param eps: uniformity error, in [0, 1)
    :return: (lower, upper)
    """
    if not 0 <= eps < 1:
        raise ValueError(f"Epsilon must be in [0, 1), got {eps}.")
    if b < 0 or tbar < 0:
        raise ValueError("B and T must be non-negative.")
    upper = 1 + ((sqrt(sbar * (1 + b)) + sqrt(tbar)) / (1 - eps)) ** 2
    lower = 1 + sbar * max(0.0, 1 - sqrt(b)) ** 2 / (1 + eps)
    return lower, upper


def optimal_block_length(sbar: float, b: float, tbar: float) -> float:
    """Block length minimising the upper bound's block argument"""
    return sqrt(sbar * (1 + b) * tbar)


def b_epsilon_upper_bound(max_probs: Sequence[float], m: int, s_max: float, sbar: float, eps: float) -> float:
    """sum_{i=1..M} (1+2i) max P^i + M (2 (S_max/S)^2 / S (1+eps) + e^-M)

    :param max_probs: max_v P^i(0, v) for i = 1..M
    :param m: M
    :param s_max: largest step
    :param sbar: mean step
    :param eps: uniformity error
    :return: The bound on B_eps
    """
    if len(max_probs) != m:
        raise ValueError(f"Expected {m} transition maxima, got {len(max_probs)}.")
    if any(not 0 <= p <= 1 for p in max_probs):
        raise ValueError("Transition maxima must be probabilities.")
    head = sum((1 + 2 * i) * p for i, p in enumerate(max_probs, start=1))
    return head + m * (2 * (s_max / sbar) ** 2 / sbar * (1 + eps) + exp(-m))


def hoeffding_sample_count(s_max: float, sbar: float, n: float, eps: float) -> int:
    """Samples M after which a sum falls short of (1+N) S_max with probability at most eps

    :param s_max: maximum of the variable
    :param sbar: its mean
    :param n: N
    :param eps: failure probability, in (0, 1)
    :return: M = 2 (S_max/S) max{(S_max/S) ln(1/eps), 1 + N}, rounded up
    """
    if sbar > s_max:
        raise ValueError(f"Mean {sbar} exceeds maximum {s_max}.")
    if not 0 < eps < 1:
        raise ValueError(f"Epsilon must be in (0, 1), got {eps}.")
    if n < 0:
        raise ValueError(f"N must be non-negative, got {n}.")
    ratio = s_max / sbar
    m = 2 * ratio * max(ratio * log(1 / eps), 1 + n)
    return ceil(m - TOLERANCE * m)


def truncated_epsilon(eps: float, p_exceed: float, sbar: float) -> float:
    """Uniformity error of min{T, M}: eps + P(T > M) / (1/S)"""
    return eps + p_exceed * sbar


def acceptance_probability(sbar: float, s_max: float) -> float:
    """Chance a tentative stopping time is accepted: S / s_max"""
    return sbar / s_max


def tentative_time_bound(gamma: float, d: int, eps: float) -> float:
    """Lazy steps after which the base-2 construction has stopped with probability 1 - eps"""
    k = d + 1
    return 2 * gamma ** 2 * k ** 2 * log(2 * gamma * k ** 2) * log(1 / eps)


def constructive_time_bound(gamma: float, d: int, n: int = 2) -> float:
    """T(2/(d+1)) from the construction: 64 gamma^5 (d+1)^5, or 2 (2 gamma (d+1))^(n+3) ln n"""
    k = d + 1
    if n == 2:
        return 64 * gamma ** 5 * k ** 5
    return 2 * (2 * gamma * k) ** (n + 3) * log(n)


def b_epsilon_leading_bound(gamma: float, d: int) -> float:
    """Leading term 3 gamma / (d+1) of the upper bound on B_eps"""
    return 3 * gamma / (d + 1)


def block_definition_bound(gamma: float, d: int, n: int) -> float:
    """Lower bound on the chance one block defines a given undefined delta_s"""
    return (1 / (gamma * (d + 1))) ** (n - 1) * n / 2 ** (n - 1)
