# Types.
from typing import Tuple

# pytest lib.
import pytest

# RandomStream class.
from mirrorphase.lib.seeding import RandomStream

# Signal model.
from mirrorphase.classes.signal.signal import SparseSignal, sample_signal
from mirrorphase.classes.signal.dataset import PhaselessDataset, sample_dataset

# HyperbolicMirrorMap class.
from mirrorphase.classes.geometry.mirror_map import HyperbolicMirrorMap

Instance = Tuple[SparseSignal, PhaselessDataset]


def make_instance(n: int, k: int, m: int, sigma: float, seed: int) -> Instance:
    rng: RandomStream = RandomStream(seed)
    signal: SparseSignal = sample_signal(n, k, rng)
    return (signal, sample_dataset(signal, m, sigma, rng))


@pytest.fixture
def stream() -> RandomStream:
    return RandomStream(1234)


@pytest.fixture
def noiseless() -> Instance:
    return make_instance(30, 3, 120, 0.0, 7)


@pytest.fixture
def noisy() -> Instance:
    return make_instance(30, 3, 120, 0.2, 8)


@pytest.fixture
def mirror_map() -> HyperbolicMirrorMap:
    return HyperbolicMirrorMap(1e-2)
