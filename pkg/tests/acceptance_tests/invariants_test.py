import numpy as np

# RandomStream class.
from mirrorphase.lib.seeding import RandomStream

# Signal model.
from mirrorphase.classes.signal.signal import SparseSignal, sample_signal
from mirrorphase.classes.signal.dataset import PhaselessDataset, sample_dataset

# Geometry.
from mirrorphase.classes.geometry.mirror_map import HyperbolicMirrorMap
from mirrorphase.classes.geometry.distance import LemmaTwoCheck, lemma2_bounds

# Risk.
from mirrorphase.classes.risk.empirical import grad_risk

# Solver.
from mirrorphase.classes.solver.state import MirrorState
from mirrorphase.classes.solver.mirror_descent import default_step_size, initialize, md_step


# Test the per-step Bregman decomposition along a noisy desk trajectory.
def bregman_identity_test() -> None:
    beta: float = 1e-6
    mirror_map: HyperbolicMirrorMap = HyperbolicMirrorMap(beta)
    rng: RandomStream = RandomStream(31)
    signal: SparseSignal = sample_signal(100, 3, rng)
    data: PhaselessDataset = sample_dataset(signal, 300, 0.2 * signal.norm2 ** 2, rng)
    eta: float = default_step_size(data)
    state: MirrorState = initialize(data, beta)

    for _ in range(500):
        gradient: np.ndarray = grad_risk(state.primal, data)
        following: MirrorState = md_step(state, gradient, eta, beta)
        before: float = mirror_map.bregman(signal.values, state.primal)
        after: float = mirror_map.bregman(signal.values, following.primal)
        descent: float = -eta * float(gradient @ (state.primal - signal.values))
        gap: float = mirror_map.bregman(state.primal, following.primal)
        scale: float = max(before, after, abs(descent), gap)
        assert abs((after - before) - (descent + gap)) <= 1e-8 * scale
        state = following


# Test both sandwich bounds on 10^4 pairs the upper bound applies to.
def bregman_sandwich_test() -> None:
    generator: np.random.Generator = RandomStream(41).generator
    for beta in (1e-2, 1e-6):
        mirror_map: HyperbolicMirrorMap = HyperbolicMirrorMap(beta)
        for i in range(5000):
            signal: SparseSignal = sample_signal(20, 4, RandomStream(i))
            x: np.ndarray = signal.values * generator.uniform(0.5, 3.0, 20)
            x[signal.off_support] = generator.normal(0, 0.01, signal.off_support.size)
            check: LemmaTwoCheck = lemma2_bounds(signal, x, mirror_map)
            assert check.upper_applicable
            assert check.lower_ok and check.upper_ok
