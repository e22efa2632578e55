"""Central finite-difference gradient checks."""

# Types.
from typing import Callable

import numpy as np

# Relative step used per coordinate: h_i = STEP * max(1, |x_i|).
STEP: float = 1e-6


def central_difference(f: Callable[[np.ndarray], float], x: np.ndarray, step: float = STEP) -> np.ndarray:
    """Approximates the gradient of f at x with central differences."""

    point: np.ndarray = np.array(x, dtype=np.float64)
    result: np.ndarray = np.empty_like(point)
    for i in range(point.size):
        h: float = step * max(1.0, abs(float(point[i])))
        original: float = float(point[i])

        point[i] = original + h
        forward: float = f(point)
        point[i] = original - h
        backward: float = f(point)
        point[i] = original

        result[i] = (forward - backward) / (2.0 * h)
    return result


def relative_error(expected: np.ndarray, actual: np.ndarray) -> float:
    """Norm-wise relative error, with an absolute floor for vanishing vectors."""

    scale: float = max(float(np.linalg.norm(expected)), float(np.linalg.norm(actual)), 1e-300)
    return float(np.linalg.norm(expected - actual)) / scale


def gradient_error(
    f: Callable[[np.ndarray], float],
    gradient: Callable[[np.ndarray], np.ndarray],
    x: np.ndarray,
    step: float = STEP,
) -> float:
    """Relative error between an analytic gradient and central differences of f at x."""

    return relative_error(central_difference(f, x, step), gradient(x))
