"""Solver state and configuration classes."""

# Types.
from typing import Dict, Optional, Any

# Enum class.
from enum import Enum

# math standard lib.
import math

import numpy as np

# Errors.
from mirrorphase.lib.errors import InvalidParameterError

# Stable hyperbolic helpers.
from mirrorphase.lib.hyperbolic import sinh_scaled

# Smallest beta accepted.
from mirrorphase.classes.geometry.mirror_map import MIN_BETA

# Defaults.
DEFAULT_BETA: float = 1e-20
DEFAULT_MAX_ITERS: int = 5000


class Engine(Enum):
    """Update rule used by a run."""

    Dual = "dual"
    ExponentiatedGradient = "eg"


class MirrorState:
    """
    MirrorState class.
    The dual vector s = grad Phi(X) is canonical; the primal X = beta sinh(s) is kept alongside it.
    """

    def __init__(self, dual: np.ndarray, primal: np.ndarray, iteration: int = 0) -> None:
        """Constructor."""

        self.dual: np.ndarray = np.asarray(dual, dtype=np.float64)
        self.primal: np.ndarray = np.asarray(primal, dtype=np.float64)
        if self.dual.shape != self.primal.shape:
            raise InvalidParameterError("Dual and primal vectors differ in length.")
        if iteration < 0:
            raise InvalidParameterError(f"Negative iteration {iteration}.")
        self.iteration: int = iteration

    @staticmethod
    def from_dual(dual: np.ndarray, beta: float, iteration: int = 0) -> "MirrorState":
        """Builds a state from its dual vector."""

        return MirrorState(dual, sinh_scaled(dual, beta), iteration)

    def to_json(self) -> Dict[str, Any]:
        """Convert a MirrorState to a transmittable format."""

        return {
            "dual": self.dual.tolist(),
            "primal": self.primal.tolist(),
            "iteration": self.iteration,
        }

    @staticmethod
    def from_json(state: Dict[str, Any]) -> "MirrorState":
        """Load a MirrorState from JSON."""

        return MirrorState(
            np.array(state["dual"], dtype=np.float64),
            np.array(state["primal"], dtype=np.float64),
            state["iteration"],
        )


class EgState:
    """EgState class. Positive weight pair (u, v) whose difference is the primal iterate."""

    def __init__(self, u: np.ndarray, v: np.ndarray, iteration: int = 0) -> None:
        """Constructor."""

        self.u: np.ndarray = np.asarray(u, dtype=np.float64)
        self.v: np.ndarray = np.asarray(v, dtype=np.float64)
        if self.u.shape != self.v.shape:
            raise InvalidParameterError("EG weight vectors differ in length.")
        if (not np.all(self.u > 0)) or (not np.all(self.v > 0)):
            raise InvalidParameterError("EG weights must be strictly positive.")
        self.iteration: int = iteration

    @property
    def primal(self) -> np.ndarray:
        """X = u - v."""

        return self.u - self.v

    def to_json(self) -> Dict[str, Any]:
        """Convert an EgState to a transmittable format."""

        return {"u": self.u.tolist(), "v": self.v.tolist(), "iteration": self.iteration}

    @staticmethod
    def from_json(state: Dict[str, Any]) -> "EgState":
        """Load an EgState from JSON."""

        return EgState(
            np.array(state["u"], dtype=np.float64),
            np.array(state["v"], dtype=np.float64),
            state["iteration"],
        )


class SolverConfig:
    """
    SolverConfig class.
    eta None means the data-driven default 0.3 mean(Y)^(-3/2).
    """

    def __init__(
        self,
        beta: float = DEFAULT_BETA,
        eta: Optional[float] = None,
        max_iters: int = DEFAULT_MAX_ITERS,
        record_every: int = 1,
        record_full_iterates: bool = False,
        engine: Engine = Engine.Dual,
    ) -> None:
        """Constructor."""

        if (not math.isfinite(beta)) or (beta < MIN_BETA):
            raise InvalidParameterError(f"beta={beta} must be finite and at least {MIN_BETA}.")
        if (eta is not None) and ((not math.isfinite(eta)) or (eta <= 0)):
            raise InvalidParameterError(f"Step size {eta} must be positive.")
        if max_iters < 1:
            raise InvalidParameterError(f"max_iters={max_iters} must be at least 1.")
        if record_every < 1:
            raise InvalidParameterError(f"record_every={record_every} must be at least 1.")

        self.beta: float = float(beta)
        self.eta: Optional[float] = None if eta is None else float(eta)
        self.max_iters: int = max_iters
        self.record_every: int = record_every
        self.record_full_iterates: bool = record_full_iterates
        self.engine: Engine = engine

    def to_json(self) -> Dict[str, Any]:
        """Convert a SolverConfig to a transmittable format."""

        return {
            "beta": self.beta,
            "eta": "auto" if self.eta is None else self.eta,
            "max_iters": self.max_iters,
            "record_every": self.record_every,
            "record_full_iterates": self.record_full_iterates,
            "engine": self.engine.value,
        }

    @staticmethod
    def from_json(config: Dict[str, Any]) -> "SolverConfig":
        """Load a SolverConfig from JSON."""

        return SolverConfig(
            config["beta"],
            None if config["eta"] == "auto" else config["eta"],
            config["max_iters"],
            config["record_every"],
            config["record_full_iterates"],
            Engine(config["engine"]),
        )

    def __eq__(self, other: Any) -> bool:
        return isinstance(other, SolverConfig) and (self.to_json() == other.to_json())
