"""
Empirical risk of the phaseless least squares problem and its gradient.

F(x) = 1/(4m) sum_j ((A_j . x)^2 - Y_j)^2
grad F(x) = 1/m sum_j ((A_j . x)^2 - Y_j) (A_j . x) A_j

Products are evaluated as dense matrix-vector products in row-major order.
With a single-threaded BLAS the results are bit-reproducible; multithreaded BLAS
may differ in the last few ulps.
"""

# Types.
from typing import Dict, NamedTuple, Optional, Any

import numpy as np

# Errors.
from mirrorphase.lib.errors import InvalidParameterError

# Signal model.
from mirrorphase.classes.signal.signal import SparseSignal
from mirrorphase.classes.signal.dataset import PhaselessDataset

# Distances.
from mirrorphase.classes.geometry.distance import nearest_sign
from mirrorphase.classes.geometry.mirror_map import as_vector


class RiskEvaluation(NamedTuple):
    """F(x) and, when requested, grad F(x)."""

    value: float
    gradient: Optional[np.ndarray]


class Coherence(NamedTuple):
    """<grad F(x), x - sign x*> with the sign of x* nearest to x."""

    value: float
    sign: int

    def to_json(self) -> Dict[str, Any]:
        """Convert a Coherence to a transmittable format."""

        return {"value": self.value, "sign": self.sign}


def check_dimension(x: np.ndarray, data: PhaselessDataset) -> np.ndarray:
    """Returns x as a vector, raising if its length isn't the dataset's dimension."""

    vector: np.ndarray = as_vector(x, "x")
    if vector.size != data.n:
        raise InvalidParameterError(
            f"Point has dimension {vector.size} but the dataset has dimension {data.n}."
        )
    return vector


def evaluate(x: np.ndarray, data: PhaselessDataset, gradient: bool = True) -> RiskEvaluation:
    """Evaluates the risk, and optionally its gradient, sharing the projections A x."""

    vector: np.ndarray = check_dimension(x, data)
    projections: np.ndarray = data.sensing @ vector
    residuals: np.ndarray = projections * projections - data.observations

    value: float = float(residuals @ residuals) / (4.0 * data.m)
    if not gradient:
        return RiskEvaluation(value, None)
    return RiskEvaluation(value, (data.sensing.T @ (residuals * projections)) / data.m)


def risk(x: np.ndarray, data: PhaselessDataset) -> float:
    """F(x) = (1 / 4m) sum_j ((a_j . x)^2 - Y_j)^2."""

    return evaluate(x, data, gradient=False).value


def grad_risk(x: np.ndarray, data: PhaselessDataset) -> np.ndarray:
    """Gradient of F at x."""

    result: Optional[np.ndarray] = evaluate(x, data).gradient
    assert result is not None
    return result


def population_grad(x: np.ndarray, xstar: SparseSignal) -> np.ndarray:
    """
    Expectation of grad F over the Gaussian sensing ensemble and zero-mean noise:
    (3 ||x||^2 - ||x*||^2) x - 2 <x, x*> x*.
    """

    vector: np.ndarray = as_vector(x, "x")
    if vector.size != xstar.n:
        raise InvalidParameterError(
            f"Point has dimension {vector.size} but the signal has dimension {xstar.n}."
        )
    return (3.0 * float(vector @ vector) - xstar.norm2 ** 2) * vector - 2.0 * float(
        vector @ xstar.values
    ) * xstar.values


def coherence_with_gradient(gradient: np.ndarray, x: np.ndarray, xstar: SparseSignal) -> Coherence:
    """Coherence from an already computed gradient."""

    sign: int = nearest_sign(xstar, x)
    return Coherence(float(gradient @ (x - sign * xstar.values)), sign)


def coherence_inner_product(x: np.ndarray, data: PhaselessDataset, xstar: SparseSignal) -> Coherence:
    """
    <grad F(x), x - x_ref> where x_ref is whichever of x*, -x* is nearer to x in l2 (ties to x*).
    Positive values certify that a gradient step moves toward x_ref.
    """

    vector: np.ndarray = check_dimension(x, data)
    return coherence_with_gradient(grad_risk(vector, data), vector, xstar)
