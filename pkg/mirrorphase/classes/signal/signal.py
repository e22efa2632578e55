"""SparseSignal class file. Ground-truth k-sparse signals and their generation."""

# Types.
from typing import Dict, Tuple, NamedTuple, Any

# math standard lib.
import math

import numpy as np

# Errors.
from mirrorphase.lib.errors import InvalidParameterError

# RandomStream class.
from mirrorphase.lib.seeding import RandomStream

# Magnitude range of nonzero entries used by the experiments.
DEFAULT_MAGNITUDE_RANGE: Tuple[float, float] = (0.15, 1.0)


class SparseSignal:
    """
    SparseSignal class.
    Holds the ground-truth vector x* with its support and Euclidean norm.
    Values are read-only after construction.
    """

    def __init__(
        self,
        values: np.ndarray,
        magnitude_range: Tuple[float, float] = DEFAULT_MAGNITUDE_RANGE,
    ) -> None:
        """Constructor."""

        self.values: np.ndarray = np.array(values, dtype=np.float64)
        if self.values.ndim != 1:
            raise InvalidParameterError("Signal values must be a vector.")
        if not np.all(np.isfinite(self.values)):
            raise InvalidParameterError("Signal values must be finite.")
        self.values.setflags(write=False)

        self.support: np.ndarray = np.flatnonzero(self.values)
        self.support.setflags(write=False)
        self.norm2: float = float(np.linalg.norm(self.values))
        self.magnitude_range: Tuple[float, float] = magnitude_range

    @property
    def n(self) -> int:
        """Dimension."""

        return int(self.values.size)

    @property
    def k(self) -> int:
        """Number of nonzero entries."""

        return int(self.support.size)

    @property
    def off_support(self) -> np.ndarray:
        """Indices outside the support."""

        mask: np.ndarray = np.ones(self.n, dtype=bool)
        mask[self.support] = False
        return np.flatnonzero(mask)

    def to_json(self) -> Dict[str, Any]:
        """Convert a SparseSignal to a transmittable format."""

        return {
            "values": self.values.tolist(),
            "magnitude_range": [self.magnitude_range[0], self.magnitude_range[1]],
        }

    @staticmethod
    def from_json(signal: Dict[str, Any]) -> "SparseSignal":
        """Load a SparseSignal from JSON."""

        return SparseSignal(
            np.array(signal["values"], dtype=np.float64),
            (signal["magnitude_range"][0], signal["magnitude_range"][1]),
        )

    def __eq__(self, other: Any) -> bool:
        """Compare two SparseSignals."""

        return isinstance(other, SparseSignal) and np.array_equal(self.values, other.values)

    def __neg__(self) -> "SparseSignal":
        """The other member of the solution set {x*, -x*}."""

        return SparseSignal(-self.values, self.magnitude_range)


def sample_signal(
    n: int,
    k: int,
    rng: RandomStream,
    magnitude_range: Tuple[float, float] = DEFAULT_MAGNITUDE_RANGE,
) -> SparseSignal:
    """
    Samples a k-sparse signal in dimension n.
    The support is k positions chosen uniformly without replacement.
    Nonzero magnitudes are uniform on magnitude_range with a uniform random sign.
    Draws come from the stream's "signal" child, so the result depends only on rng.seed.
    """

    if (k < 1) or (k > n):
        raise InvalidParameterError(f"Sparsity k={k} must satisfy 1 <= k <= n={n}.")
    low: float = magnitude_range[0]
    high: float = magnitude_range[1]
    if not (0 < low <= high):
        raise InvalidParameterError(f"Invalid magnitude range {magnitude_range}.")

    generator: np.random.Generator = rng.child("signal").generator
    support: np.ndarray = np.sort(generator.choice(n, size=k, replace=False))
    magnitudes: np.ndarray = generator.uniform(low, high, size=k)
    signs: np.ndarray = np.where(generator.random(size=k) < 0.5, -1.0, 1.0)

    values: np.ndarray = np.zeros(n, dtype=np.float64)
    values[support] = signs * magnitudes
    return SparseSignal(values, magnitude_range)


def psi1_norm(sigma: float) -> float:
    """Sub-exponential norm of N(0, sigma^2) noise: sqrt(2/pi) * sigma."""

    return math.sqrt(2.0 / math.pi) * sigma


class AssumptionReport(NamedTuple):
    """Signal-strength and sample-size quantities of the recovery guarantee. Reported, never enforced."""

    x_min: float
    x_max: float
    c_star: float
    noise_to_signal: float
    sample_regime_ratio: float

    def to_json(self) -> Dict[str, Any]:
        """Convert an AssumptionReport to a transmittable format."""

        return dict(self._asdict())


def assumption_report(signal: SparseSignal, m: int, sigma: float) -> AssumptionReport:
    """
    Computes the normalized minimum/maximum entries, the instance constant c* = sqrt(k) x*_min,
    sigma / ||x*||^2, and m / ((1 + sigma^2/||x*||^4) k^2 log^2 n).
    """

    if signal.k == 0:
        raise InvalidParameterError("The zero signal has no assumption report.")

    magnitudes: np.ndarray = np.abs(signal.values[signal.support])
    x_min: float = float(magnitudes.min()) / signal.norm2
    x_max: float = float(magnitudes.max()) / signal.norm2
    noise_to_signal: float = sigma / (signal.norm2 ** 2)

    log_n: float = max(math.log(signal.n), 1.0)
    required: float = (1.0 + noise_to_signal ** 2) * (signal.k ** 2) * (log_n ** 2)

    return AssumptionReport(
        x_min=x_min,
        x_max=x_max,
        c_star=math.sqrt(signal.k) * x_min,
        noise_to_signal=noise_to_signal,
        sample_regime_ratio=m / required,
    )


