"""
Numerically stable hyperbolic functions for the hyperbolic entropy mirror map.

The mirror map parameter beta is routinely as small as 1e-20, so x / beta and
sinh(u) must never be formed naively.
"""

# Types.
from typing import Union

# math standard lib.
import math

import numpy as np

# Errors.
from mirrorphase.lib.errors import NumericDomainError, NumericOverflowError

ArrayLike = Union[float, np.ndarray]

# Natural log of the largest finite double.
LOG_MAX_FLOAT: float = math.log(np.finfo(np.float64).max)

# Above this ratio |x| / beta, arcsinh is evaluated in its logarithmic form.
LARGE_RATIO: float = 1e8

# Above this |u|, sinh(u) is e^|u| / 2 to full double precision.
LARGE_ARGUMENT: float = 20.0


def require_finite(x: np.ndarray, name: str) -> None:
    """Raise NumericDomainError if any entry of x is NaN or infinite."""

    if not np.all(np.isfinite(x)):
        bad: int = int(np.flatnonzero(~np.isfinite(x))[0])
        raise NumericDomainError(f"{name} has a non-finite entry at coordinate {bad}.")


def arcsinh_scaled(x: ArrayLike, beta: float) -> np.ndarray:
    """
    Computes arcsinh(x / beta) componentwise without forming x / beta when it would overflow.
    Uses log1p(z + z^2 / (1 + sqrt(1 + z^2))) for moderate z and
    log|x| - log(beta) + log(1 + sqrt(1 + (beta/x)^2)) for large z.
    """

    values: np.ndarray = np.asarray(x, dtype=np.float64)
    a: np.ndarray = np.abs(values)
    result: np.ndarray = np.empty_like(a)

    large: np.ndarray = a > beta * LARGE_RATIO
    z: np.ndarray = a[~large] / beta
    result[~large] = np.log1p(z + (z * z) / (1.0 + np.sqrt(1.0 + z * z)))

    a_large: np.ndarray = a[large]
    result[large] = (
        np.log(a_large)
        - math.log(beta)
        + np.log1p(np.sqrt(1.0 + (beta / a_large) ** 2))
    )

    return np.copysign(result, values)


def sinh_scaled(u: ArrayLike, beta: float) -> np.ndarray:
    """
    Computes beta * sinh(u) componentwise.
    Raises NumericOverflowError naming the first coordinate whose result exceeds the double range.
    """

    values: np.ndarray = np.asarray(u, dtype=np.float64)
    a: np.ndarray = np.abs(values)
    result: np.ndarray = np.empty_like(a)

    large: np.ndarray = a > LARGE_ARGUMENT
    a_small: np.ndarray = a[~large]
    result[~large] = beta * 0.5 * (np.expm1(a_small) - np.expm1(-a_small))

    exponent: np.ndarray = a[large] + math.log(beta) - math.log(2.0)
    if np.any(exponent >= LOG_MAX_FLOAT):
        coordinate: int = int(np.flatnonzero(large)[np.argmax(exponent >= LOG_MAX_FLOAT)])
        raise NumericOverflowError(
            f"beta * sinh(u) overflows at coordinate {coordinate}.", coordinate
        )
    result[large] = np.exp(exponent)

    return np.copysign(result, values)


def hypot_beta(x: ArrayLike, beta: float) -> np.ndarray:
    """Computes sqrt(x^2 + beta^2) componentwise without overflow."""

    return np.hypot(np.asarray(x, dtype=np.float64), beta)
