"""PhaselessDataset class file. Gaussian sensing ensembles and noisy phaseless observations."""

# Types.
from typing import Dict, List, Tuple, Optional, Any

# math standard lib.
import math

# CSV standard lib.
import csv

# Path standard class.
from pathlib import Path

import numpy as np

# Errors.
from mirrorphase.lib.errors import InvalidParameterError

# RandomStream class.
from mirrorphase.lib.seeding import RandomStream

# Binary layout.
from mirrorphase.lib.serialization import (
    DATASET_HEADER,
    FLAG_ROWS,
    FLAG_SENSING,
    FLOAT_ARRAY,
    INDEX_ARRAY,
    format_float,
    pack_dataset_header,
    read_array,
    unpack_dataset_header,
)

# SparseSignal class.
from mirrorphase.classes.signal.signal import SparseSignal

# CSV section markers.
CSV_HEADER: List[str] = ["n", "m", "k", "sigma", "seed"]
CSV_OBSERVATIONS: str = "Y"
CSV_SENSING: str = "A"
CSV_ROWS: str = "ROWS"


def regenerate_sensing(seed: int, source_m: int, n: int) -> np.ndarray:
    """Regenerates the full sensing matrix drawn by sample_dataset from its seed."""

    return RandomStream(seed).generator.standard_normal((source_m, n))


class PhaselessDataset:
    """
    PhaselessDataset class.
    Contains the sensing matrix A (m x n), observations Y (m), the noise scale, and the seed
    the sensing matrix was drawn from.

    A dataset may be a row subset of a generated dataset (hold-out splits).
    In that case `rows` holds the indices into the generated matrix and `source_m` its row count.
    """

    def __init__(
        self,
        sensing: np.ndarray,
        observations: np.ndarray,
        sigma: float,
        seed: int,
        k: int = 0,
        rows: Optional[np.ndarray] = None,
        source_m: Optional[int] = None,
    ) -> None:
        """Constructor."""

        self.sensing: np.ndarray = np.array(sensing, dtype=np.float64)
        self.observations: np.ndarray = np.array(observations, dtype=np.float64)
        if self.sensing.ndim != 2:
            raise InvalidParameterError("Sensing matrix must be two-dimensional.")
        if self.observations.shape != (self.sensing.shape[0],):
            raise InvalidParameterError(
                "Observation count doesn't match the sensing matrix row count."
            )
        if self.observations.size == 0:
            raise InvalidParameterError("A dataset needs at least one observation.")
        if (not math.isfinite(sigma)) or (sigma < 0):
            raise InvalidParameterError(f"Noise scale {sigma} must be finite and nonnegative.")
        self.sensing.setflags(write=False)
        self.observations.setflags(write=False)

        self.sigma: float = float(sigma)
        self.seed: int = seed
        self.k: int = k

        self.rows: Optional[np.ndarray] = None
        if rows is not None:
            self.rows = np.array(rows, dtype=np.int64)
            self.rows.setflags(write=False)
            if self.rows.shape != self.observations.shape:
                raise InvalidParameterError("Row index count doesn't match the observation count.")
        self.source_m: int = self.m if source_m is None else source_m

    @property
    def n(self) -> int:
        """Dimension."""

        return int(self.sensing.shape[1])

    @property
    def m(self) -> int:
        """Number of observations."""

        return int(self.sensing.shape[0])

    def mean_observation(self) -> float:
        """mean(Y)."""

        return float(np.mean(self.observations))

    def subset(self, indices: np.ndarray) -> "PhaselessDataset":
        """Returns the dataset restricted to the given row positions."""

        positions: np.ndarray = np.asarray(indices, dtype=np.int64)
        source_rows: np.ndarray = (
            positions if self.rows is None else self.rows[positions]
        )
        return PhaselessDataset(
            self.sensing[positions],
            self.observations[positions],
            self.sigma,
            self.seed,
            self.k,
            source_rows,
            self.source_m,
        )

    def regenerate(self) -> np.ndarray:
        """Regenerates this dataset's sensing matrix from its seed."""

        full: np.ndarray = regenerate_sensing(self.seed, self.source_m, self.n)
        if self.rows is None:
            return full
        return full[self.rows]

    def serialize(self, include_sensing: bool = True) -> bytes:
        """Serialize a PhaselessDataset to the documented binary layout."""

        flags: int = 0
        if include_sensing:
            flags |= FLAG_SENSING
        if self.rows is not None:
            flags |= FLAG_ROWS

        result: bytes = pack_dataset_header(
            flags, self.n, self.m, self.k, self.seed, self.source_m, self.sigma
        )
        result += self.observations.astype(FLOAT_ARRAY).tobytes()
        if self.rows is not None:
            result += self.rows.astype(INDEX_ARRAY).tobytes()
        if include_sensing:
            result += self.sensing.astype(FLOAT_ARRAY).tobytes()
        return result

    @staticmethod
    def parse(data: bytes) -> "PhaselessDataset":
        """Parse a PhaselessDataset from the binary layout, regenerating the sensing matrix if absent."""

        flags: int
        n: int
        m: int
        k: int
        seed: int
        source_m: int
        sigma: float
        (flags, n, m, k, seed, source_m, sigma) = unpack_dataset_header(data)

        cursor: int = DATASET_HEADER.size
        observations: np.ndarray
        (observations, cursor) = read_array(data, cursor, FLOAT_ARRAY, m)

        rows: Optional[np.ndarray] = None
        if flags & FLAG_ROWS:
            (rows, cursor) = read_array(data, cursor, INDEX_ARRAY, m)
            rows = rows.astype(np.int64)

        sensing: np.ndarray
        if flags & FLAG_SENSING:
            (sensing, cursor) = read_array(data, cursor, FLOAT_ARRAY, m * n)
            sensing = sensing.reshape((m, n))
        else:
            sensing = regenerate_sensing(seed, source_m, n)
            if rows is not None:
                sensing = sensing[rows]

        return PhaselessDataset(sensing, observations, sigma, seed, k, rows, source_m)

    def to_csv(self, path: Path, include_sensing: bool = False) -> None:
        """
        Write the dataset as CSV.
        Layout: the header row n,m,k,sigma,seed and its values row; a `Y` row followed by one
        observation per line; optionally an `A` row followed by one sensing row per line;
        for row subsets, a `ROWS,<source_m>` row followed by one source row index per line.
        """

        with open(path, "w", newline="", encoding="utf-8") as file:
            writer: Any = csv.writer(file, lineterminator="\n")
            writer.writerow(CSV_HEADER)
            writer.writerow([self.n, self.m, self.k, format_float(self.sigma), self.seed])

            writer.writerow([CSV_OBSERVATIONS])
            for value in self.observations:
                writer.writerow([format_float(value)])

            if include_sensing:
                writer.writerow([CSV_SENSING])
                for row in self.sensing:
                    writer.writerow([format_float(value) for value in row])

            if self.rows is not None:
                writer.writerow([CSV_ROWS, self.source_m])
                for index in self.rows:
                    writer.writerow([int(index)])

    @staticmethod
    def from_csv(path: Path) -> "PhaselessDataset":
        """Read a dataset written by to_csv, regenerating the sensing matrix if it wasn't stored."""

        with open(path, "r", newline="", encoding="utf-8") as file:
            lines: List[List[str]] = list(csv.reader(file))

        if (len(lines) < 3) or (lines[0] != CSV_HEADER) or (lines[2] != [CSV_OBSERVATIONS]):
            raise InvalidParameterError(f"{path} is not a dataset CSV.")
        n: int = int(lines[1][0])
        m: int = int(lines[1][1])
        k: int = int(lines[1][2])
        sigma: float = float(lines[1][3])
        seed: int = int(lines[1][4])

        cursor: int = 3
        observations: np.ndarray = np.array(
            [float(line[0]) for line in lines[cursor : cursor + m]], dtype=np.float64
        )
        cursor += m

        sensing: Optional[np.ndarray] = None
        if (cursor < len(lines)) and (lines[cursor] == [CSV_SENSING]):
            cursor += 1
            sensing = np.array(
                [[float(value) for value in line] for line in lines[cursor : cursor + m]],
                dtype=np.float64,
            ).reshape((m, n))
            cursor += m

        rows: Optional[np.ndarray] = None
        source_m: int = m
        if (cursor < len(lines)) and (lines[cursor][0] == CSV_ROWS):
            source_m = int(lines[cursor][1])
            cursor += 1
            rows = np.array([int(line[0]) for line in lines[cursor : cursor + m]], dtype=np.int64)

        if sensing is None:
            sensing = regenerate_sensing(seed, source_m, n)
            if rows is not None:
                sensing = sensing[rows]

        return PhaselessDataset(sensing, observations, sigma, seed, k, rows, source_m)


def sample_dataset(
    signal: SparseSignal, m: int, sigma: float, rng: RandomStream
) -> PhaselessDataset:
    """
    Samples Y_j = (A_j . x*)^2 + eps_j for j = 1..m.
    A has i.i.d. standard normal entries and eps_j is N(0, sigma^2); sigma is the Gaussian
    standard deviation (its sub-exponential norm is psi1_norm(sigma)).
    The sensing matrix is the first draw of the stream's "dataset" child, whose seed is recorded.
    """

    if m < 1:
        raise InvalidParameterError(f"Sample count m={m} must be at least 1.")
    if (not math.isfinite(sigma)) or (sigma < 0):
        raise InvalidParameterError(f"Noise scale {sigma} must be finite and nonnegative.")

    stream: RandomStream = rng.child("dataset")
    sensing: np.ndarray = stream.generator.standard_normal((m, signal.n))
    noise: np.ndarray = sigma * stream.generator.standard_normal(m)

    projections: np.ndarray = sensing @ signal.values
    observations: np.ndarray = projections * projections + noise
    return PhaselessDataset(sensing, observations, sigma, stream.seed, signal.k)


def magnitude_estimate(dataset: PhaselessDataset) -> float:
    """theta = sqrt(max(0, mean(Y))), the estimate of ||x*||_2. Negative means clamp to 0."""

    return math.sqrt(max(0.0, dataset.mean_observation()))


def observation_summary(dataset: PhaselessDataset) -> Dict[str, Any]:
    """Shape and noise level of a dataset, for reports."""

    return {
        "n": dataset.n,
        "m": dataset.m,
        "k": dataset.k,
        "sigma": dataset.sigma,
        "seed": dataset.seed,
        "mean_observation": dataset.mean_observation(),
    }
