from fractions import Fraction
from math import isqrt


_SQRT_BITS = 20


def sqrt_rational(value: int) -> Fraction:
    """Square root truncated to 20 fractional bits, exact for perfect squares

    :param value: non-negative integer
    :return: floor(sqrt(value) * 2^20) / 2^20
    """
    if value < 0:
        raise ValueError(f"Cannot take the square root of {value}.")
    return Fraction(isqrt(value << (2 * _SQRT_BITS)), 1 << _SQRT_BITS)
