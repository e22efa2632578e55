"""Sign-invariant distances and the Bregman sandwich check."""

# Types.
from typing import Dict, NamedTuple, Any

# math standard lib.
import math

import numpy as np

# Errors.
from mirrorphase.lib.errors import InvalidParameterError

# SparseSignal class.
from mirrorphase.classes.signal.signal import SparseSignal

# HyperbolicMirrorMap class.
from mirrorphase.classes.geometry.mirror_map import HyperbolicMirrorMap, as_vector

# Relative slack allowed when comparing the two sides of a bound.
BOUND_TOLERANCE: float = 1e-9


def check_length(xstar: SparseSignal, x: np.ndarray) -> np.ndarray:
    """Returns x as a vector, raising if its length isn't the signal's."""

    vector: np.ndarray = as_vector(x, "x")
    if vector.size != xstar.n:
        raise InvalidParameterError(
            f"Iterate has length {vector.size} but the signal has length {xstar.n}."
        )
    return vector


def nearest_sign(xstar: SparseSignal, x: np.ndarray) -> int:
    """The sign s in {+1, -1} minimizing ||x - s x*||_2. Ties go to +1."""

    vector: np.ndarray = check_length(xstar, x)
    plus: float = float(np.linalg.norm(vector - xstar.values))
    minus: float = float(np.linalg.norm(vector + xstar.values))
    return -1 if minus < plus else 1


def dist_signset(xstar: SparseSignal, x: np.ndarray) -> float:
    """dist(x*, x) = min(||x - x*||_2, ||x + x*||_2)."""

    vector: np.ndarray = check_length(xstar, x)
    return min(
        float(np.linalg.norm(vector - xstar.values)),
        float(np.linalg.norm(vector + xstar.values)),
    )


def dist_phi_signset(xstar: SparseSignal, x: np.ndarray, mirror_map: HyperbolicMirrorMap) -> float:
    """dist_Phi(x*, x) = min(D(x*, x), D(-x*, x))."""

    vector: np.ndarray = check_length(xstar, x)
    return min(
        mirror_map.bregman(xstar.values, vector),
        mirror_map.bregman(-xstar.values, vector),
    )


class LemmaTwoCheck(NamedTuple):
    """
    Result of checking the two-sided bound relating the Bregman divergence to Euclidean errors.
    Slacks are right side minus left side; nonnegative slack means the bound holds.
    slack_upper is nan when the upper bound doesn't apply.
    """

    lower_ok: bool
    upper_applicable: bool
    upper_ok: bool
    slack_lower: float
    slack_upper: float

    def to_json(self) -> Dict[str, Any]:
        """Convert a LemmaTwoCheck to a transmittable format."""

        return dict(self._asdict())


def lemma2_bounds(xstar: SparseSignal, x: np.ndarray, mirror_map: HyperbolicMirrorMap) -> LemmaTwoCheck:
    """
    Checks, for the reference point x*:
        lower: ||x - x*||^2 <= 2 sqrt(max(||x||_inf^2, ||x*||_inf^2) + beta^2) D(x*, x)
        upper: D(x*, x) <= sqrt(k) / (c* ||x*||) ||x_S - x*_S||^2 + ||x_{S^c}||_1
    The upper bound applies when x agrees in sign with x* everywhere and |x_i| >= |x*_i| / 2.
    c* = sqrt(k) min_{i in S} |x*_i| / ||x*||, the largest constant the signal admits,
    which makes the leading factor 1 / min_{i in S} |x*_i|.
    """

    vector: np.ndarray = check_length(xstar, x)
    target: np.ndarray = xstar.values
    divergence: float = mirror_map.bregman(target, vector)

    error_sq: float = float(np.sum((vector - target) ** 2))
    sup: float = max(float(np.max(np.abs(vector), initial=0.0)), float(np.max(np.abs(target), initial=0.0)))
    lower_rhs: float = 2.0 * math.sqrt(sup * sup + mirror_map.beta ** 2) * divergence
    slack_lower: float = lower_rhs - error_sq
    lower_ok: bool = slack_lower >= -BOUND_TOLERANCE * max(error_sq, lower_rhs, 1e-300)

    upper_applicable: bool = bool(
        np.all(vector * target >= 0) and np.all(np.abs(vector) >= 0.5 * np.abs(target))
    )
    upper_ok: bool = True
    slack_upper: float = math.nan
    if upper_applicable and (xstar.k > 0):
        support: np.ndarray = xstar.support
        x_min: float = float(np.min(np.abs(target[support])))
        on_support: float = float(np.sum((vector[support] - target[support]) ** 2))
        off_support: float = float(np.sum(np.abs(vector[xstar.off_support])))
        upper_rhs: float = on_support / x_min + off_support
        slack_upper = upper_rhs - divergence
        upper_ok = slack_upper >= -BOUND_TOLERANCE * max(divergence, upper_rhs, 1e-300)

    return LemmaTwoCheck(lower_ok, upper_applicable, upper_ok, slack_lower, slack_upper)
