"""MirrorDescent class file. Initialization, step-size rule, and the two update rules."""

# Types.
from typing import Tuple

# Abstract class standard lib.
from abc import ABC, abstractmethod

# math standard lib.
import math

import numpy as np

# Errors.
from mirrorphase.lib.errors import (
    DegenerateDataError,
    DivergedError,
    InvalidParameterError,
    NumericOverflowError,
)

# Stable hyperbolic helpers.
from mirrorphase.lib.hyperbolic import arcsinh_scaled, sinh_scaled

# Signal model.
from mirrorphase.classes.signal.dataset import PhaselessDataset, magnitude_estimate

# State classes.
from mirrorphase.classes.solver.state import MirrorState, EgState

# Step size scale: eta = STEP_SCALE * mean(Y)^(-3/2).
STEP_SCALE: float = 0.3

# |s_i| above this is treated as divergence. beta sinh(s) overflows near 710 for beta = 1.
DUAL_LIMIT: float = 700.0


def default_step_size(data: PhaselessDataset) -> float:
    """0.3 / mean(Y)^(3/2)."""

    mean: float = data.mean_observation()
    if not mean > 0:
        raise DegenerateDataError(f"Mean observation {mean} leaves no step size.")
    return STEP_SCALE * mean ** -1.5


def select_coordinate(data: PhaselessDataset) -> int:
    """I0 = argmax_i 1/m sum_j Y_j A_ji^2. Ties go to the smallest index."""

    scores: np.ndarray = (data.observations @ (data.sensing * data.sensing)) / data.m
    return int(np.argmax(scores))


def initial_primal(data: PhaselessDataset) -> np.ndarray:
    """X0: theta / sqrt(3) at I0, zero elsewhere."""

    theta: float = magnitude_estimate(data)
    if theta == 0:
        raise DegenerateDataError("Magnitude estimate is zero.")
    primal: np.ndarray = np.zeros(data.n, dtype=np.float64)
    primal[select_coordinate(data)] = theta / math.sqrt(3.0)
    return primal


def initialize(data: PhaselessDataset, beta: float) -> MirrorState:
    """The dual-domain initial state."""

    if beta <= 0:
        raise InvalidParameterError(f"beta={beta} must be positive.")
    primal: np.ndarray = initial_primal(data)
    return MirrorState(arcsinh_scaled(primal, beta), primal, 0)


def eg_initial_pair(theta: float, beta: float) -> Tuple[float, float]:
    """
    The positive pair (U, V) with U - V = theta / sqrt(3) and U V = beta^2 / 4.
    V is formed as (beta/2)^2 / U, which equals the difference of the two roots without cancellation.
    """

    a: float = theta / (2.0 * math.sqrt(3.0))
    half: float = beta / 2.0
    u: float = a + math.hypot(a, half)
    return (u, half * (half / u))


def eg_initialize(data: PhaselessDataset, beta: float) -> EgState:
    """The EG initial state: (U, V) at I0, beta / 2 for both weights elsewhere."""

    if beta <= 0:
        raise InvalidParameterError(f"beta={beta} must be positive.")
    theta: float = magnitude_estimate(data)
    if theta == 0:
        raise DegenerateDataError("Magnitude estimate is zero.")

    u: np.ndarray = np.full(data.n, beta / 2.0, dtype=np.float64)
    v: np.ndarray = np.full(data.n, beta / 2.0, dtype=np.float64)
    i0: int = select_coordinate(data)
    (u[i0], v[i0]) = eg_initial_pair(theta, beta)
    return EgState(u, v, 0)


def check_gradient(gradient: np.ndarray, n: int) -> np.ndarray:
    """Converts a gradient to a float vector of length n."""

    result: np.ndarray = np.asarray(gradient, dtype=np.float64)
    if result.shape != (n,):
        raise InvalidParameterError(f"Gradient has shape {result.shape}, expected ({n},).")
    return result


def md_step(state: MirrorState, gradient: np.ndarray, eta: float, beta: float) -> MirrorState:
    """
    One mirror descent step in the dual domain: s' = s - eta grad, X' = beta sinh(s').
    Raises DivergedError when a dual coordinate leaves [-700, 700] or isn't finite.
    """

    if eta <= 0:
        raise InvalidParameterError(f"Step size {eta} must be positive.")
    dual: np.ndarray = state.dual - eta * check_gradient(gradient, state.dual.size)

    bad: np.ndarray = ~(np.abs(dual) <= DUAL_LIMIT)
    if np.any(bad):
        coordinate: int = int(np.flatnonzero(bad)[0])
        raise DivergedError(
            f"Dual coordinate {coordinate} left the representable range at iteration {state.iteration + 1}.",
            state.iteration + 1,
            coordinate,
        )

    try:
        primal: np.ndarray = sinh_scaled(dual, beta)
    except NumericOverflowError as e:
        raise DivergedError(
            f"Primal coordinate {e.coordinate} overflowed at iteration {state.iteration + 1}.",
            state.iteration + 1,
            e.coordinate,
        )
    return MirrorState(dual, primal, state.iteration + 1)


def eg_step(state: EgState, gradient: np.ndarray, eta: float) -> EgState:
    """
    One EG step: u' = u exp(-eta grad), v' = v exp(eta grad).
    Raises DivergedError when a weight overflows or underflows to zero.
    """

    if eta <= 0:
        raise InvalidParameterError(f"Step size {eta} must be positive.")
    scaled: np.ndarray = eta * check_gradient(gradient, state.u.size)

    with np.errstate(over="ignore", under="ignore", invalid="ignore"):
        u: np.ndarray = state.u * np.exp(-scaled)
        v: np.ndarray = state.v * np.exp(scaled)

    bad: np.ndarray = ~(np.isfinite(u) & np.isfinite(v) & (u > 0) & (v > 0))
    if np.any(bad):
        coordinate: int = int(np.flatnonzero(bad)[0])
        raise DivergedError(
            f"EG weight {coordinate} left the representable range at iteration {state.iteration + 1}.",
            state.iteration + 1,
            coordinate,
        )
    return EgState(u, v, state.iteration + 1)


class MirrorDescent(ABC):
    """
    MirrorDescent class.
    An iteration engine: holds the current iterate and advances it given a gradient.
    """

    def __init__(self, data: PhaselessDataset, beta: float, eta: float) -> None:
        """Constructor."""

        self.data: PhaselessDataset = data
        self.beta: float = beta
        self.eta: float = eta

    @property
    @abstractmethod
    def primal(self) -> np.ndarray:
        """The current primal iterate X^t."""

    @property
    @abstractmethod
    def iteration(self) -> int:
        """The current iteration t."""

    @abstractmethod
    def initialize(self) -> None:
        """Resets to the data-driven initial point."""

    @abstractmethod
    def step(self, gradient: np.ndarray) -> None:
        """Advances one iteration using grad F(X^t)."""
