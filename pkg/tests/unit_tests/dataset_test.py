# Types.
from typing import Tuple

# math standard lib.
import math

# Path standard class.
from pathlib import Path

# pytest lib.
import pytest

import numpy as np

# Errors.
from mirrorphase.lib.errors import InvalidParameterError

# RandomStream class.
from mirrorphase.lib.seeding import RandomStream

# Signal classes.
from mirrorphase.classes.signal.signal import SparseSignal, sample_signal
from mirrorphase.classes.signal.dataset import (
    PhaselessDataset,
    magnitude_estimate,
    regenerate_sensing,
    sample_dataset,
)

# Test fixtures.
from tests.unit_tests.conftest import Instance


# Test noiseless observations are the squared projections.
def noiseless_test(noiseless: Instance) -> None:
    (signal, data) = noiseless
    assert data.m == 120
    assert data.n == 30
    assert np.array_equal(data.observations, (data.sensing @ signal.values) ** 2)
    assert np.all(data.observations >= 0)


# Test the zero signal yields zero observations.
def zero_signal_test() -> None:
    data: PhaselessDataset = sample_dataset(SparseSignal(np.zeros(8)), 20, 0.0, RandomStream(1))
    assert np.all(data.observations == 0)
    assert magnitude_estimate(data) == 0


# Test regeneration from the seed is bit-exact.
def determinism_test(noisy: Instance) -> None:
    (signal, data) = noisy
    assert np.array_equal(regenerate_sensing(data.seed, data.m, data.n), data.sensing)

    again: PhaselessDataset = sample_dataset(signal, data.m, data.sigma, RandomStream(8))
    assert np.array_equal(again.sensing, data.sensing)
    assert np.array_equal(again.observations, data.observations)


# Test the sensing entries are standard normal.
def sensing_distribution_test() -> None:
    signal: SparseSignal = sample_signal(50, 5, RandomStream(2))
    data: PhaselessDataset = sample_dataset(signal, 400, 0.0, RandomStream(2))
    entries: np.ndarray = data.sensing.ravel()
    assert abs(float(np.mean(entries))) <= 4 / math.sqrt(entries.size)
    assert abs(float(np.var(entries)) - 1) <= 0.05


# Test E[Y] = ||x*||^2 within 3 standard errors.
def mean_observation_test() -> None:
    signal: SparseSignal = sample_signal(50, 5, RandomStream(5))
    data: PhaselessDataset = sample_dataset(signal, 100000, 0.0, RandomStream(5))
    error: float = float(np.std(data.observations)) / math.sqrt(data.m)
    assert abs(data.mean_observation() - signal.norm2 ** 2) <= 3 * error


# Test the magnitude estimate, including the clamp.
def magnitude_estimate_test() -> None:
    sensing: np.ndarray = np.ones((4, 2))
    assert magnitude_estimate(PhaselessDataset(sensing, np.full(4, 4.0), 0.0, 0)) == 2
    assert magnitude_estimate(PhaselessDataset(sensing, np.array([-3.0, 1.0, 0.0, 0.0]), 1.0, 0)) == 0

    unit: np.ndarray = np.zeros(50)
    unit[[1, 2]] = [0.6, 0.8]
    data: PhaselessDataset = sample_dataset(SparseSignal(unit), 100000, 0.0, RandomStream(6))
    assert 0.99 <= magnitude_estimate(data) <= 1.01


def invalid_test() -> None:
    signal: SparseSignal = sample_signal(10, 2, RandomStream(0))
    with pytest.raises(InvalidParameterError):
        sample_dataset(signal, 0, 0.0, RandomStream(0))
    with pytest.raises(InvalidParameterError):
        sample_dataset(signal, 10, -1.0, RandomStream(0))
    with pytest.raises(InvalidParameterError):
        PhaselessDataset(np.ones((3, 2)), np.ones(2), 0.0, 0)


# Test subsets remember their source rows and regenerate.
def subset_test(noisy: Instance) -> None:
    (_, data) = noisy
    rows: np.ndarray = np.array([3, 10, 50])
    part: PhaselessDataset = data.subset(rows)
    assert part.m == 3
    assert part.source_m == data.m
    assert np.array_equal(part.sensing, data.sensing[rows])
    assert np.array_equal(part.regenerate(), part.sensing)

    nested: PhaselessDataset = part.subset(np.array([2]))
    assert nested.rows is not None
    assert list(nested.rows) == [50]


# Test the binary layout, with and without the stored sensing matrix.
def binary_test(noisy: Instance) -> None:
    (_, data) = noisy
    for include in (True, False):
        parsed: PhaselessDataset = PhaselessDataset.parse(data.serialize(include))
        assert np.array_equal(parsed.sensing, data.sensing)
        assert np.array_equal(parsed.observations, data.observations)
        assert (parsed.sigma, parsed.seed, parsed.k) == (data.sigma, data.seed, data.k)

    part: PhaselessDataset = data.subset(np.array([1, 5, 7]))
    parsed_part: PhaselessDataset = PhaselessDataset.parse(part.serialize(False))
    assert np.array_equal(parsed_part.sensing, part.sensing)

    with pytest.raises(InvalidParameterError):
        PhaselessDataset.parse(b"XXXX" + data.serialize()[4:])
    with pytest.raises(InvalidParameterError):
        PhaselessDataset.parse(data.serialize()[:-8])


# Test the CSV layout.
def csv_test(noisy: Instance, tmp_path: Path) -> None:
    (_, data) = noisy
    path: Path = tmp_path / "dataset.csv"
    data.to_csv(path)
    lines: Tuple[str, ...] = tuple(path.read_text(encoding="utf-8").splitlines())
    assert lines[0] == "n,m,k,sigma,seed"
    assert lines[1] == f"30,120,3,0.2,{data.seed}"
    assert lines[2] == "Y"

    loaded: PhaselessDataset = PhaselessDataset.from_csv(path)
    assert np.array_equal(loaded.sensing, data.sensing)
    assert np.array_equal(loaded.observations, data.observations)

    stored: Path = tmp_path / "stored.csv"
    part: PhaselessDataset = data.subset(np.array([0, 4]))
    part.to_csv(stored, include_sensing=True)
    loaded_part: PhaselessDataset = PhaselessDataset.from_csv(stored)
    assert np.array_equal(loaded_part.sensing, part.sensing)
    assert loaded_part.source_m == data.m
