"""HyperbolicMirrorMap class file."""

# Types.
from typing import Dict, Any

# math standard lib.
import math

import numpy as np

# Errors.
from mirrorphase.lib.errors import InvalidParameterError

# Stable hyperbolic helpers.
from mirrorphase.lib.hyperbolic import (
    arcsinh_scaled,
    hypot_beta,
    require_finite,
    sinh_scaled,
)

# Smallest beta accepted. Anything smaller underflows beta^2 and loses the map's curvature.
MIN_BETA: float = 1e-300


def as_vector(x: Any, name: str) -> np.ndarray:
    """Converts an argument to a finite float64 vector."""

    vector: np.ndarray = np.asarray(x, dtype=np.float64)
    if vector.ndim != 1:
        raise InvalidParameterError(f"{name} must be a vector.")
    require_finite(vector, name)
    return vector


class HyperbolicMirrorMap:
    """
    HyperbolicMirrorMap class.
    Phi(x) = sum_i x_i arcsinh(x_i / beta) - sqrt(x_i^2 + beta^2).
    Small beta makes Phi behave like the l1 norm; large beta like a scaled squared l2 norm.
    """

    def __init__(self, beta: float) -> None:
        """Constructor."""

        if (not math.isfinite(beta)) or (beta < MIN_BETA):
            raise InvalidParameterError(f"beta={beta} must be finite and at least {MIN_BETA}.")
        self.beta: float = float(beta)

    def phi(self, x: np.ndarray) -> float:
        """Evaluates the potential."""

        values: np.ndarray = as_vector(x, "x")
        return float(
            np.sum(values * arcsinh_scaled(values, self.beta) - hypot_beta(values, self.beta))
        )

    def grad_phi(self, x: np.ndarray) -> np.ndarray:
        """Maps a primal point to the dual domain: arcsinh(x_i / beta)."""

        return arcsinh_scaled(as_vector(x, "x"), self.beta)

    def grad_phi_inverse(self, u: np.ndarray) -> np.ndarray:
        """Maps a dual point back to the primal domain: beta sinh(u_i)."""

        return sinh_scaled(as_vector(u, "u"), self.beta)

    def bregman(self, x: np.ndarray, y: np.ndarray) -> float:
        """
        D(x, y) = Phi(x) - Phi(y) - <grad Phi(y), x - y>, x being the reference point.
        Evaluated per coordinate as
            sqrt(y^2 + b^2) - sqrt(x^2 + b^2) - x (arcsinh(y / b) - arcsinh(x / b))
        with the square root difference written as (y - x)(y + x) / (sqrt(y^2 + b^2) + sqrt(x^2 + b^2)).
        """

        reference: np.ndarray = as_vector(x, "x")
        point: np.ndarray = as_vector(y, "y")
        if reference.shape != point.shape:
            raise InvalidParameterError(
                f"Bregman divergence of vectors of lengths {reference.size} and {point.size}."
            )

        h_reference: np.ndarray = hypot_beta(reference, self.beta)
        h_point: np.ndarray = hypot_beta(point, self.beta)
        root_difference: np.ndarray = (point - reference) * (point + reference) / (h_point + h_reference)
        dual_difference: np.ndarray = arcsinh_scaled(point, self.beta) - arcsinh_scaled(
            reference, self.beta
        )

        # Each term is itself a one-dimensional Bregman divergence.
        terms: np.ndarray = np.maximum(root_difference - reference * dual_difference, 0.0)
        return float(np.sum(terms))

    def to_json(self) -> Dict[str, Any]:
        """Convert a HyperbolicMirrorMap to a transmittable format."""

        return {"beta": self.beta}

    @staticmethod
    def from_json(mirror_map: Dict[str, Any]) -> "HyperbolicMirrorMap":
        """Load a HyperbolicMirrorMap from JSON."""

        return HyperbolicMirrorMap(mirror_map["beta"])

    def __repr__(self) -> str:
        return f"HyperbolicMirrorMap(beta={self.beta!r})"
